// Command-line front end: k-weights, reconstruction, checks, normal forms,
// weight ranges, IO/OI transforms and random pseudostars.

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "pseudostar/dissim_io.hpp"
#include "pseudostar/dissimilarity.hpp"
#include "pseudostar/error.hpp"
#include "pseudostar/newick.hpp"
#include "pseudostar/oracle.hpp"
#include "pseudostar/reconstruction.hpp"
#include "pseudostar/transforms.hpp"
#include "pseudostar/weight_range.hpp"

namespace {

using namespace pseudostar;

constexpr int kUsage = 1;
constexpr int kDomain = 2;

/// File contents; "-" reads standard input.
std::string slurp(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

LeafSet parse_leaf_list(const std::string& text) {
  LeafSet out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto v = parse_rational(item);
    if (!v || v->get_den() != 1 || *v < 1 || *v > LeafSet::kMaxLabel)
      throw ParseError("bad leaf '" + item + "' in list " + text, 1, 1);
    out.insert(static_cast<LeafLabel>(v->get_num().get_si()));
  }
  if (out.empty()) throw ParseError("empty leaf list", 1, 1);
  return out;
}

WeightedTree io_on_split(const WeightedTree& t, LeafSet side, int k) {
  for (EdgeId e = 0; e < t.edge_count(); ++e) {
    const Split s = t.split(e);
    if (s.side_a == side || s.side_b == side) return k_io(t, e, k);
  }
  throw Error(ErrorCode::NotIoEligible, "no edge induces the split " + side.to_string());
}

/// The vertex where `block` is a union of at least two branches and so is its
/// complement. Such a vertex is unique when it exists.
OiInsertion locate_block(const WeightedTree& t, LeafSet block, const Rational& weight) {
  for (VertexId v = 0; v < t.vertex_count(); ++v) {
    if (t.degree(v) < 4) continue;
    OiInsertion ins;
    ins.at_vertex = v;
    LeafSet covered;
    bool clean = true;
    for (const Incidence& inc : t.incident(v)) {
      const LeafSet branch = t.side(inc.edge, inc.vertex);
      if (block.contains(branch)) {
        ins.moved.push_back(inc.vertex);
        covered = covered | branch;
      } else if (branch.intersects(block)) {
        clean = false;
        break;
      } else {
        ins.kept.push_back(inc.vertex);
      }
    }
    if (clean && covered == block && ins.moved.size() >= 2 && ins.kept.size() >= 2) {
      ins.new_edge_weight = weight;
      return ins;
    }
  }
  throw Error(ErrorCode::BadInsertion, "no vertex splits off " + block.to_string() + " as two or more branches");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"k-weights of weighted trees and pseudostar reconstruction"};
  app.require_subcommand(1);

  std::string tree_path, dissim_path, split_list, block_list, weight_text;
  int k = 0, n = 0;
  std::uint64_t seed = 0;
  bool positive = false, general = false;

  auto* weights = app.add_subcommand("weights", "k-weights of a tree as a dissimilarity document");
  weights->add_option("--tree", tree_path, "Newick file ('-' for stdin)")->required();
  weights->add_option("--k", k, "subset size")->required();

  auto* recon = app.add_subcommand("reconstruct", "pseudostar realizing a dissimilarity document");
  recon->add_option("--dissim", dissim_path, "dissimilarity file ('-' for stdin)")->required();

  auto* check = app.add_subcommand("check", "does a tree realize a dissimilarity document");
  check->add_option("--tree", tree_path, "Newick file")->required();
  check->add_option("--dissim", dissim_path, "dissimilarity file")->required();

  auto* normalize = app.add_subcommand("normalize", "pseudostar normal form of a tree");
  normalize->add_option("--tree", tree_path, "Newick file ('-' for stdin)")->required();
  normalize->add_option("--k", k, "subset size")->required();

  auto* range = app.add_subcommand("range", "range of total weight over all realizations");
  range->add_option("--dissim", dissim_path, "dissimilarity file ('-' for stdin)")->required();
  auto* pos_flag = range->add_flag("--positive", positive, "positive weights (default)");
  range->add_flag("--general", general, "arbitrary real weights")->excludes(pos_flag);

  auto* transform = app.add_subcommand("transform", "k-IO or k-OI operation");
  transform->require_subcommand(1);
  auto* io = transform->add_subcommand("io", "contract the edge inducing a split");
  io->add_option("--tree", tree_path, "Newick file ('-' for stdin)")->required();
  io->add_option("--k", k, "subset size")->required();
  io->add_option("--split", split_list, "one side of the split, e.g. 1,2,3,4")->required();
  auto* oi = transform->add_subcommand("oi", "split a block of branches off a vertex");
  oi->add_option("--tree", tree_path, "Newick file ('-' for stdin)")->required();
  oi->add_option("--k", k, "subset size")->required();
  oi->add_option("--block", block_list, "leaves of the moved block, e.g. 1,2,3,4")->required();
  oi->add_option("--weight", weight_text, "weight y of the new edge")->required();
  oi->add_flag("--positive", positive, "refuse twigs dropping to <= 0");

  auto* random = app.add_subcommand("random", "random essential pseudostar");
  random->add_option("--n", n, "leaf count")->required();
  random->add_option("--k", k, "subset size")->required();
  random->add_option("--seed", seed, "generator seed")->required();
  random->add_flag("--positive", positive, "positive internal weights");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  try {
    if (*weights) {
      std::cout << serialize_dissimilarity(k_vector(parse_tree(slurp(tree_path)), k));
    } else if (*recon) {
      const ReconstructionReport report = reconstruct(parse_dissimilarity(slurp(dissim_path)));
      std::cout << serialize_tree(report.tree);
      if (!report.verified) {
        std::cerr << "not verified: k-weights differ at " << report.witness->to_string() << "\n";
        return kDomain;
      }
      std::cerr << "verified\n";
    } else if (*check) {
      const WeightedTree t = parse_tree(slurp(tree_path));
      const KDissimilarity d = parse_dissimilarity(slurp(dissim_path));
      const Verification v = verify_realization(t, d);
      if (!v.ok) {
        std::cerr << "mismatch at " << v.witness->to_string() << ": tree gives "
                  << format_rational(steiner_weight(t, *v.witness)) << ", family has "
                  << format_rational(d[*v.witness]) << "\n";
        return kDomain;
      }
      std::cout << "ok\n";
    } else if (*normalize) {
      std::cout << serialize_tree(pseudostar_normal_form(parse_tree(slurp(tree_path)), k));
    } else if (*range) {
      const KDissimilarity d = parse_dissimilarity(slurp(dissim_path));
      const ReconstructionReport report = reconstruct(d);
      if (!report.verified) {
        std::cerr << "not verified: k-weights differ at " << report.witness->to_string() << "\n";
        return kDomain;
      }
      const WeightRange r = general ? range_general(report.tree, d.k()) : range_positive(report.tree, d.k());
      std::cout << format_range(r);
    } else if (*io) {
      std::cout << serialize_tree(io_on_split(parse_tree(slurp(tree_path)), parse_leaf_list(split_list), k));
    } else if (*oi) {
      const auto y = parse_rational(weight_text);
      if (!y) throw ParseError("malformed weight '" + weight_text + "'", 1, 1);
      const WeightedTree t = parse_tree(slurp(tree_path));
      std::cout << serialize_tree(k_oi(t, locate_block(t, parse_leaf_list(block_list), *y), k, positive));
    } else if (*random) {
      oracle::RandomSpec spec;
      spec.n = n;
      spec.k = k;
      spec.seed = seed;
      if (!positive) spec.internal = {Rational(-10), Rational(10)};
      std::cout << serialize_tree(oracle::random_pseudostar(spec));
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error at line " << e.line() << ", column " << e.column() << ": " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    const bool input_problem = e.code() == ErrorCode::MissingSubset || e.code() == ErrorCode::DuplicateSubset;
    return input_problem ? kUsage : kDomain;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return 0;
}
