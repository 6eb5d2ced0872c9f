#include "coxvis_cli/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "coxvis/decomposition.hpp"
#include "coxvis/diagram.hpp"
#include "coxvis/errors.hpp"
#include "coxvis/finite_type.hpp"
#include "coxvis/graph_of_groups.hpp"
#include "coxvis/refinement.hpp"
#include "coxvis/word_engine.hpp"

namespace coxvis::cli {

namespace {

enum class Format { Text, Dot, Lines };

// Bad files, bad flag values: exit 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

template <typename F>
auto parse_input(const std::string& what, F&& parse) {
  try {
    return parse();
  } catch (const ParseError& e) {
    throw UsageError(what + ": " + e.what());
  } catch (const DomainError& e) {
    throw UsageError(what + ": " + e.what());
  }
}

CoxeterSystem load_system(const std::string& path) {
  const std::string text = read_file(path);
  return parse_input(path, [&] { return parse_system(text); });
}

class Printer {
 public:
  Printer(std::ostream& out, Format format) : out_(out), format_(format) {
    if (format_ == Format::Lines) out_ << "coxvis/1\n";
  }

  Format format() const { return format_; }

  // `kind` prefixes the record under --format lines only.
  void record(std::string_view kind, std::string_view body) {
    if (format_ == Format::Lines) out_ << kind << ' ';
    out_ << body << '\n';
  }

  // Like record, but text output keeps the kind as a "kind: " label.
  void field(std::string_view kind, std::string_view body) {
    out_ << kind << (format_ == Format::Lines ? " " : ": ") << body << '\n';
  }

  void raw(std::string_view text) { out_ << text; }

  void gog(const CoxeterSystem& sys, const VisualGoG& g) {
    if (format_ == Format::Dot) {
      out_ << export_dot_gog(sys, g);
      return;
    }
    std::istringstream lines(emit_gog(sys, g));
    for (std::string line; std::getline(lines, line);) out_ << line << '\n';
  }

 private:
  std::ostream& out_;
  Format format_;
};

std::string join_subsets(const CoxeterSystem& sys, const std::vector<GeneratorSubset>& sets) {
  std::string out;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    if (i) out += ' ';
    out += format_subset(sys, sets[i]);
  }
  return out;
}

int cmd_info(const CoxeterSystem& sys, Printer& p) {
  if (p.format() == Format::Dot) {
    p.raw(export_dot(sys));
    return kExitOk;
  }
  std::string names;
  std::size_t edges = 0;
  for (GenIndex s = 0; s < sys.rank(); ++s) {
    names += (s ? " " : "") + sys.name(s);
    for (GenIndex t = s + 1; t < sys.rank(); ++t) edges += sys.order(s, t) != kInfiniteOrder;
  }
  p.field("generators", std::to_string(sys.rank()) + " " + names);
  p.field("edges", std::to_string(edges));
  p.field("components", join_subsets(sys, diagram_components(sys, sys.all())));
  p.field("coxeter-components", join_subsets(sys, coxeter_graph_components(sys, sys.all())));
  p.field("cliques", join_subsets(sys, maximal_cliques(sys)));
  p.field("group", is_finite(sys, sys.all()).describe());
  return kExitOk;
}

int cmd_ends(const CoxeterSystem& sys, Printer& p) {
  const EndsClass e = ends(sys);
  p.record("ends", e.describe(sys));
  return kExitOk;
}

int cmd_dunwoody(const CoxeterSystem& sys, Printer& p) {
  const VisualGoG g = visual_dunwoody(sys);
  if (p.format() != Format::Dot) {
    if (const std::string path = describe_path(sys, g); !path.empty()) p.record("path", path);
  }
  p.gog(sys, g);
  return kExitOk;
}

int cmd_vfree(const CoxeterSystem& sys, Printer& p, std::ostream& err) {
  const VirtualFreeness v = is_virtually_free(sys);
  if (v.virtually_free != v.dunwoody_all_finite) {
    err << "error: chordal criterion and Dunwoody decomposition disagree\n";
    return kExitDomain;
  }
  if (p.format() != Format::Dot || !v.witness) p.record("vfree", v.describe(sys));
  if (v.witness) p.gog(sys, *v.witness);
  return kExitOk;
}

int cmd_refine(const CoxeterSystem& sys, const std::string& split_path, std::size_t radius, Printer& p,
               std::ostream& err) {
  const std::string text = read_file(split_path);
  const AbstractSplitting split = parse_input(split_path, [&] {
    AbstractSplitting s = parse_splitting(sys, text);
    check_splitting(s);
    return s;
  });
  const WordEngine engine(sys);
  const RefinementOutcome r = refine_to_visual(engine, split, radius);
  const std::string stats = "radius=" + std::to_string(r.radius) + " explored=" + std::to_string(r.vertices_explored);
  if (r.status == RefinementStatus::Inconclusive) {
    err << "inconclusive " << stats << ": " << r.reason << '\n';
    return kExitDomain;
  }
  if (p.format() != Format::Dot) {
    p.record("refine", "refined " + stats);
    for (GenIndex s = 0; s < sys.rank(); ++s) {
      const TreeVertexRecord& t = r.tree[*r.generator_certificates[s]];
      p.field("certificate", sys.name(s) + " coset=" + format_word(sys, t.coset_rep.word()) +
                                 " vertex=" + t.splitting_vertex);
    }
    if (const std::string path = describe_path(sys, *r.decomposition); !path.empty()) p.record("path", path);
  }
  p.gog(sys, *r.decomposition);
  return kExitOk;
}

int cmd_validate(const CoxeterSystem& sys, const std::string& gog_path, Printer& p) {
  const std::string text = read_file(gog_path);
  const VisualGoG g = parse_input(gog_path, [&] { return parse_gog(sys, text); });
  const ValidationReport report = validate_visual(sys, g);
  p.record("validate", report.describe(sys));
  return report.valid ? kExitOk : kExitDomain;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Visual decompositions of Coxeter groups", "coxvis"};
  app.require_subcommand(1, 1);
  std::string format = "text";
  app.add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"text", "dot", "lines"}))
      ->capture_default_str();

  std::string cox_path;
  auto add_cmd = [&](const std::string& name, const std::string& help) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->fallthrough();
    sub->add_option("system", cox_path, ".cox file")->required();
    return sub;
  };

  CLI::App* info = add_cmd("info", "Summary: generators, components, cliques, finiteness");
  CLI::App* ends_cmd = add_cmd("ends", "Number of ends with witness");
  std::string over;
  CLI::App* split = add_cmd("split", "Visual splitting over a separating subset");
  split->add_option("--over", over, "Separating generators, e.g. \"s2 s4\"")->required();
  CLI::App* dunwoody = add_cmd("dunwoody", "Visual Dunwoody decomposition");
  CLI::App* fa = add_cmd("fa", "Maximal FA special subgroups");
  CLI::App* vfree = add_cmd("vfree", "Virtual freeness");
  CLI::App* vs = add_cmd("vs", "Visually stable candidates");
  std::string reduce_word;
  CLI::App* word = add_cmd("word", "Normal form of a word");
  word->add_option("--reduce", reduce_word, "Word, e.g. \"s3 s5 s3\"")->required();
  std::string left_conj = "e", left_gens, right_conj = "e", right_gens;
  CLI::App* intersect = add_cmd("intersect", "Intersection of two conjugates of special subgroups");
  intersect->add_option("--left-conj", left_conj, "Conjugator g of g<I>g^-1")->capture_default_str();
  intersect->add_option("--left-gens", left_gens, "Generators I")->required();
  intersect->add_option("--right-conj", right_conj, "Conjugator h of h<J>h^-1")->capture_default_str();
  intersect->add_option("--right-gens", right_gens, "Generators J")->required();
  std::string split_path;
  std::size_t radius = 6;
  CLI::App* refine = add_cmd("refine", "Refine a splitting into a visual decomposition");
  refine->add_option("splitting", split_path, ".split file")->required();
  refine->add_option("--radius", radius, "Search budget")->capture_default_str();
  std::string gog_path;
  CLI::App* validate = add_cmd("validate", "Check a visual graph of groups");
  validate->add_option("gog", gog_path, ".gog file")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  }

  try {
    const CoxeterSystem sys = load_system(cox_path);
    Printer p(out, format == "dot" ? Format::Dot : format == "lines" ? Format::Lines : Format::Text);
    auto subset_arg = [&](const std::string& flag, const std::string& text) {
      return parse_input(flag, [&] { return sys.subset(text); });
    };
    auto word_arg = [&](const std::string& flag, const std::string& text) {
      return parse_input(flag, [&] { return parse_word(sys, text); });
    };

    if (info->parsed()) return cmd_info(sys, p);
    if (ends_cmd->parsed()) return cmd_ends(sys, p);
    if (split->parsed()) {
      p.gog(sys, split_over(sys, subset_arg("--over", over)));
      return kExitOk;
    }
    if (dunwoody->parsed()) return cmd_dunwoody(sys, p);
    if (fa->parsed()) {
      for (GeneratorSubset c : maximal_fa(sys)) p.record("fa", format_subset(sys, c));
      return kExitOk;
    }
    if (vfree->parsed()) return cmd_vfree(sys, p, err);
    if (vs->parsed()) {
      for (GeneratorSubset c : vs_candidates(sys)) p.record("vs", format_subset(sys, c));
      return kExitOk;
    }
    if (word->parsed()) {
      const Word w = word_arg("--reduce", reduce_word);
      const WordEngine engine(sys);
      p.record("normal-form", format_word(sys, engine.normal_form(w).word()));
      return kExitOk;
    }
    if (intersect->parsed()) {
      const WordEngine engine(sys);
      const ConjugateSpecial left{engine.normal_form(word_arg("--left-conj", left_conj)),
                                  subset_arg("--left-gens", left_gens)};
      const ConjugateSpecial right{engine.normal_form(word_arg("--right-conj", right_conj)),
                                   subset_arg("--right-gens", right_gens)};
      const IntersectionResult r = engine.intersect_special_conjugates(left, right);
      p.record("intersect", "conjugator=" + format_word(sys, r.conjugator.word()) + " core=" + format_subset(sys, r.core));
      return kExitOk;
    }
    if (refine->parsed()) return cmd_refine(sys, split_path, radius, p, err);
    if (validate->parsed()) return cmd_validate(sys, gog_path, p);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  }
  return kExitUsage;
}

}  // namespace coxvis::cli
