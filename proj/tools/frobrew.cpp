#include "frobrew/confluence.hpp"
#include "frobrew/dot.hpp"
#include "frobrew/functor.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kNegative = 2;      // DIFFERENT / NOT_CONFLUENT
constexpr int kInconclusive = 3;  // bound exhausted

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::shared_ptr<const frobrew::Signature> load_signature(const std::string& path) {
  return std::make_shared<frobrew::Signature>(frobrew::parse_signature(slurp(path)));
}

std::vector<frobrew::Rule> load_rules(const frobrew::Signature& sig,
                                      const std::vector<std::string>& paths) {
  std::vector<frobrew::Rule> rules;
  for (const auto& path : paths)
    for (auto& r : frobrew::parse_rules(slurp(path), sig)) {
      for (const auto& seen : rules)
        if (seen.name == r.name)
          throw frobrew::ParseError("duplicate rule name '" + r.name +
                                    "' across rule files");
      rules.push_back(std::move(r));
    }
  return rules;
}

std::vector<frobrew::DpoRule> to_dpo(std::shared_ptr<const frobrew::Signature> sig,
                                     const std::vector<frobrew::Rule>& rules) {
  std::vector<frobrew::DpoRule> out;
  out.reserve(rules.size());
  for (const auto& r : rules) out.push_back(frobrew::rule_from_diagrams(sig, r));
  return out;
}

// A rewriting state prints as its folded cospan: empty left leg, the
// interface as the right leg.
frobrew::Cospan as_cospan(const frobrew::GraphWithInterface& s) {
  return {s.graph, frobrew::Interface{}, s.iface};
}

void print_state(std::ostream& out, const frobrew::GraphWithInterface& s,
                 const std::string& format) {
  if (format == "dot")
    out << frobrew::to_dot(s);
  else
    out << frobrew::print_cospan(as_cospan(s));
}

struct CommonOptions {
  std::string sig_path;
  std::vector<std::string> rule_paths;
  std::string format = "text";
  std::optional<std::size_t> bound;
  bool assert_terminating = false;
  bool trace = false;
  bool keep_disjoint = false;
  std::string certificates_dir;
};

void add_signature_option(CLI::App* cmd, CommonOptions& opt) {
  cmd->add_option("-s,--signature", opt.sig_path, "signature file")
      ->required()
      ->check(CLI::ExistingFile);
}

void add_rules_option(CLI::App* cmd, CommonOptions& opt) {
  cmd->add_option("-r,--rules", opt.rule_paths, "rule file (repeatable)")
      ->required()
      ->check(CLI::ExistingFile);
}

void add_format_option(CLI::App* cmd, CommonOptions& opt) {
  cmd->add_option("--format", opt.format, "output format")
      ->check(CLI::IsMember({"text", "dot"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rewriting engine for free hypergraph categories"};
  app.require_subcommand(1);

  CommonOptions opt;
  std::string term_text, term2_text, input_text;
  bool normalize = false;
  std::string render_graph_path, render_cospan_path;

  auto* cmd_check = app.add_subcommand("check", "parse and type-check a term");
  add_signature_option(cmd_check, opt);
  cmd_check->add_option("term", term_text, "term to check")->required();

  auto* cmd_translate =
      app.add_subcommand("translate", "translate a term to its cospan");
  add_signature_option(cmd_translate, opt);
  add_format_option(cmd_translate, opt);
  cmd_translate->add_option("term", term_text, "term to translate")->required();

  auto* cmd_equal =
      app.add_subcommand("equal", "decide equality of two terms modulo the laws");
  add_signature_option(cmd_equal, opt);
  cmd_equal->add_option("term1", term_text, "first term")->required();
  cmd_equal->add_option("term2", term2_text, "second term")->required();

  auto* cmd_rewrite = app.add_subcommand("rewrite", "rewrite a term");
  add_signature_option(cmd_rewrite, opt);
  add_rules_option(cmd_rewrite, opt);
  add_format_option(cmd_rewrite, opt);
  cmd_rewrite->add_option("term", input_text, "input term")->required();
  cmd_rewrite->add_flag("--normalize", normalize,
                        "rewrite to normal forms instead of one step");
  cmd_rewrite->add_option("--bound", opt.bound, "step bound for --normalize");
  cmd_rewrite->add_flag("--assert-terminating", opt.assert_terminating,
                        "claim termination; search closes exhaustively");
  cmd_rewrite->add_flag("--trace", opt.trace, "print rule names per result");

  auto* cmd_cps = app.add_subcommand("cps", "enumerate critical pairs");
  add_signature_option(cmd_cps, opt);
  add_rules_option(cmd_cps, opt);
  add_format_option(cmd_cps, opt);
  cmd_cps->add_flag("--keep-disjoint", opt.keep_disjoint,
                    "include pairs whose matches do not overlap");

  auto* cmd_confluence =
      app.add_subcommand("confluence", "Knuth-Bendix confluence check");
  add_signature_option(cmd_confluence, opt);
  add_rules_option(cmd_confluence, opt);
  cmd_confluence->add_option("--bound", opt.bound, "joinability step bound");
  cmd_confluence->add_flag("--assert-terminating", opt.assert_terminating,
                           "claim termination; searches close exhaustively");
  cmd_confluence->add_flag("--keep-disjoint", opt.keep_disjoint,
                           "also analyse non-overlapping pairs");
  cmd_confluence->add_option("--certificates", opt.certificates_dir,
                             "write one file per critical pair into this directory");
  cmd_confluence->add_flag("--trace", opt.trace, "print one line per pair");

  auto* cmd_render = app.add_subcommand("render", "render a term or graph as DOT");
  add_signature_option(cmd_render, opt);
  cmd_render->add_option("term", term_text, "term to render");
  cmd_render->add_option("--graph", render_graph_path, "render a hypergraph file")
      ->check(CLI::ExistingFile);
  cmd_render->add_option("--cospan", render_cospan_path, "render a cospan file")
      ->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    auto sig = load_signature(opt.sig_path);

    if (cmd_check->parsed()) {
      frobrew::Diagram d = frobrew::parse_diagram(term_text, *sig);
      auto [dom, cod] = frobrew::type_of(d);
      std::cout << term_text << " : " << frobrew::format_word(*sig, dom) << " -> "
                << frobrew::format_word(*sig, cod) << "\n";
      return kOk;
    }

    if (cmd_translate->parsed()) {
      frobrew::Diagram d = frobrew::parse_diagram(term_text, *sig);
      frobrew::Cospan f = frobrew::translate(sig, d);
      if (opt.format == "dot")
        std::cout << frobrew::to_dot(f);
      else
        std::cout << frobrew::print_cospan(f);
      return kOk;
    }

    if (cmd_equal->parsed()) {
      frobrew::Diagram a = frobrew::parse_diagram(term_text, *sig);
      frobrew::Diagram b = frobrew::parse_diagram(term2_text, *sig);
      frobrew::Cospan fa = frobrew::translate(sig, a);
      frobrew::Cospan fb = frobrew::translate(sig, b);
      auto witness = frobrew::cospan_isomorphism(fa, fb);
      if (!witness) {
        std::cout << "DIFFERENT\n";
        return kNegative;
      }
      std::cout << "EQUAL\n";
      std::cout << "witness:";
      for (frobrew::NodeId n = 0; n < witness->source.node_count(); ++n)
        std::cout << " n" << n << "->n" << witness->node_map[n];
      std::cout << "\n";
      return kOk;
    }

    if (cmd_rewrite->parsed()) {
      auto rules = load_rules(*sig, opt.rule_paths);
      frobrew::Diagram d = frobrew::parse_diagram(input_text, *sig);
      if (!normalize) {
        auto results = frobrew::syntactic_step(sig, rules, d);
        std::cout << results.size() << " result(s)\n";
        for (std::size_t i = 0; i < results.size(); ++i) {
          std::cout << "result " << i << ":\n";
          print_state(std::cout, results[i], opt.format);
        }
        return kOk;
      }
      if (!opt.bound && !opt.assert_terminating)
        throw CLI::ValidationError(
            "rewrite", "--normalize needs --bound or --assert-terminating");
      auto dpo = to_dpo(sig, rules);
      frobrew::Cospan folded = frobrew::fold_cospan(frobrew::translate(sig, d));
      frobrew::GraphWithInterface start{folded.carrier, folded.right};
      auto nf = frobrew::normal_forms(
          start, dpo, opt.assert_terminating ? std::nullopt : opt.bound);
      std::cout << nf.forms.size() << " normal form(s)\n";
      for (std::size_t i = 0; i < nf.forms.size(); ++i) {
        std::cout << "normal form " << i << ":\n";
        print_state(std::cout, nf.forms[i], opt.format);
      }
      if (!nf.complete) {
        std::cout << "bound exhausted before closure\n";
        return kInconclusive;
      }
      return kOk;
    }

    if (cmd_cps->parsed()) {
      auto rules = load_rules(*sig, opt.rule_paths);
      auto pairs = frobrew::enumerate_critical_pairs(to_dpo(sig, rules));
      std::size_t shown = 0;
      std::ostringstream body;
      for (const auto& p : pairs) {
        if (p.disjoint && !opt.keep_disjoint) continue;
        body << "pair " << shown << ": " << p.rule1.name << " / " << p.rule2.name
             << (p.disjoint ? " (disjoint)" : "") << "\n";
        body << "overlap:\n";
        print_state(body, p.overlap_state(), opt.format);
        body << "result 1:\n";
        print_state(body, p.result1(), opt.format);
        body << "result 2:\n";
        print_state(body, p.result2(), opt.format);
        ++shown;
      }
      std::cout << shown << " critical pair(s)\n" << body.str();
      return kOk;
    }

    if (cmd_confluence->parsed()) {
      auto rules = load_rules(*sig, opt.rule_paths);
      auto report = frobrew::check_confluence(to_dpo(sig, rules), opt.bound,
                                              opt.assert_terminating,
                                              opt.keep_disjoint);
      if (opt.trace)
        for (std::size_t i = 0; i < report.pairs.size(); ++i)
          std::cout << "pair " << i << ": " << report.pairs[i].rule1.name << " / "
                    << report.pairs[i].rule2.name << " "
                    << (report.certificates[i] ? "joinable" : "not joined") << "\n";
      if (!opt.certificates_dir.empty()) {
        std::filesystem::create_directories(opt.certificates_dir);
        for (std::size_t i = 0; i < report.pairs.size(); ++i) {
          std::ofstream out(std::filesystem::path(opt.certificates_dir) /
                            ("pair" + std::to_string(i) + ".txt"));
          const auto& p = report.pairs[i];
          out << "# " << p.rule1.name << " / " << p.rule2.name
              << (p.disjoint ? " (disjoint)" : "") << "\n";
          out << "overlap:\n" << frobrew::print_cospan(as_cospan(p.overlap_state()));
          out << "result 1:\n" << frobrew::print_cospan(as_cospan(p.result1()));
          out << "result 2:\n" << frobrew::print_cospan(as_cospan(p.result2()));
          if (report.certificates[i]) {
            out << "meet:\n"
                << frobrew::print_cospan(as_cospan(report.certificates[i]->target));
          } else {
            out << "meet: none\n";
          }
        }
      }
      switch (report.verdict) {
        case frobrew::Verdict::Confluent:
          std::cout << "CONFLUENT\n";
          return kOk;
        case frobrew::Verdict::NotConfluent:
          std::cout << "NOT_CONFLUENT\n";
          if (report.failing_pair) {
            const auto& p = report.pairs[*report.failing_pair];
            std::cout << "failing pair: " << p.rule1.name << " / " << p.rule2.name
                      << "\n";
            print_state(std::cout, p.overlap_state(), "text");
          }
          return kNegative;
        case frobrew::Verdict::Inconclusive:
          std::cout << "INCONCLUSIVE\n";
          return kInconclusive;
      }
      return kOk;
    }

    if (cmd_render->parsed()) {
      if (!render_graph_path.empty()) {
        frobrew::Hypergraph g = frobrew::parse_hypergraph(slurp(render_graph_path), sig);
        std::cout << frobrew::to_dot(g);
      } else if (!render_cospan_path.empty()) {
        frobrew::Cospan f = frobrew::parse_cospan(slurp(render_cospan_path), sig);
        std::cout << frobrew::to_dot(f);
      } else if (!term_text.empty()) {
        frobrew::Diagram d = frobrew::parse_diagram(term_text, *sig);
        std::cout << frobrew::to_dot(frobrew::translate(sig, d));
      } else {
        throw CLI::ValidationError("render",
                                   "give a term, --graph <file> or --cospan <file>");
      }
      return kOk;
    }
  } catch (const CLI::Error& e) {
    std::cerr << e.what() << "\n";
    return kUsage;
  } catch (const frobrew::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const frobrew::TypeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }

  return kUsage;
}
