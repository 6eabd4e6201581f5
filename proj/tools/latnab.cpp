#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "latnab/catalog.hpp"
#include "latnab/designs.hpp"
#include "latnab/io.hpp"
#include "latnab/isometry.hpp"
#include "latnab/overlattice.hpp"
#include "latnab/parallel.hpp"
#include "latnab/quotient.hpp"
#include "latnab/reproduce.hpp"
#include "latnab/shells.hpp"
#include "latnab/venkov.hpp"

namespace {

constexpr int kDomainExit = 1;
constexpr int kBudgetExit = 2;
constexpr int kMismatchExit = 3;

using namespace latnab;

void write_out(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw DomainError("cannot write " + path);
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations on Euclidean lattices"};
  app.require_subcommand(1);
  unsigned threads = 0;
  app.add_option("--threads", threads, "Worker threads (default: LATNAB_THREADS or hardware concurrency)");

  std::string target, other, vector_text, dump_path, out_path, norm_text = "0";
  std::string classify = "auto", policy = "fast";
  std::string max_norm = "12";
  int t_cap = kDefaultTCap;
  std::uint64_t budget = kDefaultPairwiseBudget;
  std::uint64_t order_bound = kDefaultQuotientBound;
  bool pretty = false;

  auto* cat = app.add_subcommand("catalog", "Catalog names");
  auto* cat_list = cat->add_subcommand("list", "List catalog names and families");
  cat->require_subcommand(1);

  auto* show = app.add_subcommand("show", "Basis, Gram, determinant, parity, minimum, kissing");
  show->add_option("lattice", target, "Catalog expression or lattice file")->required();
  show->add_flag("--pretty", pretty, "Human-readable summary");

  auto* th = app.add_subcommand("theta", "Theta series coefficients up to a norm");
  th->add_option("lattice", target)->required();
  th->add_option("--max-norm", max_norm, "Largest norm, \"p\" or \"p/q\"");

  auto* sh = app.add_subcommand("shell", "Vectors of one norm");
  sh->add_option("lattice", target)->required();
  sh->add_option("-m,--norm", norm_text, "Norm, \"p\" or \"p/q\"")->required();
  sh->add_option("--dump", dump_path, "Write the vectors as JSON to this path");

  auto* cl = app.add_subcommand("classes", "Class table of L#/L");
  cl->add_option("lattice", target)->required();
  cl->add_option("--order-bound", order_bound, "Largest |L#/L| accepted");

  auto* nb = app.add_subcommand("neighbor", "The index-2 neighbor <L, x>");
  nb->add_option("lattice", target)->required();
  nb->add_option("--vector", vector_text, "Ambient coordinates \"a/b,c,...\"")->required();
  nb->add_option("-o,--out", out_path, "Lattice file to write (default stdout)");

  auto* cs = app.add_subcommand("census", "All integral overlattices of L");
  cs->add_option("lattice", target)->required();
  cs->add_option("--classify", classify, "auto, fast, strict or none")
      ->check(CLI::IsMember({"auto", "fast", "strict", "none"}));
  cs->add_option("--order-bound", order_bound, "Largest |L#/L| accepted");
  std::vector<std::string> candidates;
  cs->add_option("--candidate", candidates,
                 "Catalog expression used to name buckets (default: the reference names for catalog bases)");

  auto* iso = app.add_subcommand("isometric", "Isometry test with certificate");
  iso->add_option("a", target)->required();
  iso->add_option("b", other)->required();
  iso->add_option("--policy", policy, "fast or strict")->check(CLI::IsMember({"fast", "strict"}));

  auto* de = app.add_subcommand("design", "(d, n, s, t) of one shell");
  de->add_option("lattice", target)->required();
  de->add_option("-m,--norm", norm_text)->required();
  de->add_option("--t-cap", t_cap, "Largest strength tested");
  de->add_option("--budget", budget, "Largest shell for the pairwise kernel");
  bool no_tensor = false;
  de->add_flag("--no-tensor", no_tensor, "Fail instead of using the tensor-moment path past the budget");

  auto* ve = app.add_subcommand("venkov", "Projection L_e of an even lattice of minimum 4");
  ve->add_option("lattice", target)->required();
  ve->add_option("--vector", vector_text, "Minimal vector e (default: the first one)");
  ve->add_option("-o,--out", out_path, "Write the projected lattice file here");

  int section = 0;
  bool fast = false, extended = false;
  auto* re = app.add_subcommand("reproduce", "Regenerate the reference tables and diff them");
  re->add_option("--section", section, "1..8 (default: all)")->check(CLI::Range(kFirstSection, kLastSection));
  re->add_flag("--fast", fast, "Fingerprint classification");
  re->add_flag("--extended", extended, "Tensor-moment strengths for large shells");

  CLI11_PARSE(app, argc, argv);
  if (threads) set_thread_count(threads);

  try {
    if (*cat_list) {
      for (const auto& n : catalog_names()) std::cout << n << "\n";
    } else if (*show) {
      Lattice l = resolve_lattice(target);
      if (!pretty) {
        std::cout << summary_json(l);
      } else {
        std::cout << "dim " << l.dim() << "\ndet " << to_string(l.determinant()) << "\nparity "
                  << (is_even(l) ? "even" : is_integral(l) ? "odd" : "non-integral") << "\nminimum "
                  << to_string(minimum(l)) << "\nkissing " << kissing(l) << "\nbasis\n";
        for (std::size_t i = 0; i < l.dim(); ++i) std::cout << "  " << format_vector(l.basis().row(i)) << "\n";
      }
    } else if (*th) {
      std::cout << theta_json(theta(resolve_lattice(target), parse_rational(max_norm)));
    } else if (*sh) {
      Lattice l = resolve_lattice(target);
      Shell s = shell(l, parse_rational(norm_text));
      std::cout << shell_json(l, s, false);
      if (!dump_path.empty()) write_out(shell_json(l, s, true), dump_path);
    } else if (*cl) {
      std::cout << class_table_json(class_table(resolve_lattice(target), order_bound));
    } else if (*nb) {
      Lattice l = resolve_lattice(target);
      write_out(lattice_json(neighbor(l, parse_vector(vector_text))), out_path);
    } else if (*cs) {
      OverlatticeCensus c = integral_overlattices(resolve_lattice(target), order_bound);
      if (classify != "none") {
        ClassifyPolicy p = classify == "fast" ? ClassifyPolicy::Fast
                           : classify == "strict" ? ClassifyPolicy::Strict
                                                  : ClassifyPolicy::Auto;
        if (candidates.empty()) candidates = reference_census_names(target);
        std::vector<CatalogCandidate> named;
        for (const auto& n : candidates) named.push_back({n, catalog(n)});
        c = classify_census(std::move(c), p, named);
      }
      std::cout << census_json(c);
    } else if (*iso) {
      IsometryPolicy p = policy == "strict" ? IsometryPolicy::Strict : IsometryPolicy::Fast;
      std::cout << verdict_json(is_isometric(resolve_lattice(target), resolve_lattice(other), p));
    } else if (*de) {
      std::cout << design_json(configuration(resolve_lattice(target), parse_rational(norm_text), t_cap, budget, !no_tensor));
    } else if (*ve) {
      Lattice l = resolve_lattice(target);
      LatticeVector e;
      if (vector_text.empty()) {
        Shell s = shell(l, minimum(l));
        e = l.combination(s.coefficients(0));
      } else {
        e = parse_vector(vector_text);
      }
      VenkovResult r = venkov_project(l, e);
      std::cout << venkov_json(r);
      if (!out_path.empty()) write_lattice(out_path, r.projected);
    } else if (*re) {
      ReproduceOptions options{fast, extended};
      bool ok = true;
      for (int s = section ? section : kFirstSection; s <= (section ? section : kLastSection); ++s) {
        ReproduceReport r = reproduce_section(s, options);
        std::cout << report_json(r);
        ok = ok && r.passed();
      }
      return ok ? EXIT_SUCCESS : kMismatchExit;
    }
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kBudgetExit;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDomainExit;
  }
  return EXIT_SUCCESS;
}
