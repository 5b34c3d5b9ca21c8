#pragma once

// Command dispatch for the arrowcfg executable. Kept in a header so the test
// suite can drive it with in-memory streams.
//
// Exit codes: 0 success, 1 a checked property fails, 2 input error.

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "arrowcfg/arrowcfg.hpp"

namespace arrowcfg::cli {

enum Exit : int { ok = 0, property_fails = 1, input_error = 2 };

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Json parse_json(const std::string& text, const std::string& origin) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(origin + ": malformed JSON at byte " + std::to_string(e.byte) + ": " + e.what());
  }
}

inline Json read_json(const std::string& path) { return parse_json(read_file(path), path); }

inline bool looks_like_json(const std::string& text) {
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    return c == '{' || c == '[';
  }
  return false;
}

/// A grammar file holds either grammar JSON or classical text.
inline Grammar read_grammar(const std::string& path) {
  std::string text = read_file(path);
  Grammar g = looks_like_json(text) ? grammar_from_json(parse_json(text, path)) : import_classical(parse_classical(text));
  require_valid(g);
  return g;
}

inline Species read_species(const std::string& path) {
  Json j = read_json(path);
  if (j.is_object() && j.contains("rules")) return grammar_from_json(j).species;
  return species_from_json(j);
}

/// A word is a JSON path, or a bare string when every generator name is one character.
inline Path read_word(const FiniteGraph& c, const std::string& text, const std::string& empty_at) {
  if (looks_like_json(text)) return path_from_json(c, parse_json(text, "word"));
  for (const auto& g : c.generators())
    if (g.name.size() != 1)
      throw InputError("bare-string words need single-character generators; pass a JSON array instead");
  std::vector<std::string> gens;
  for (char ch : text) gens.emplace_back(1, ch);
  if (gens.empty()) return make_path(c, empty_at, {});
  return make_path(c, std::move(gens));
}

/// Words print as strings when all generators are single characters, else as JSON paths.
inline Json word_json(const FiniteGraph& c, const Path& p) {
  bool letters = true;
  for (const auto& g : c.generators()) letters = letters && g.name.size() == 1;
  if (!letters) return to_json(p);
  std::string s;
  for (const auto& g : p.gens) s += g;
  return s;
}

inline Json properties_json(const GrammarProperties& p) {
  return {{"linear", p.linear},           {"left_linear", p.left_linear},   {"right_linear", p.right_linear},
          {"bilinear", p.bilinear},       {"cnf", p.cnf},                   {"nullable", p.nullable_set},
          {"productive", p.productive_set}, {"useful", p.useful_set}};
}

inline Json letters_json(const std::vector<DyckLetter>& letters) {
  Json out = Json::array();
  for (const auto& l : letters) out.push_back({{"bracket", l.open ? "[" : "]"}, {"node", l.node}, {"index", l.index}});
  return out;
}

inline std::vector<DyckLetter> letters_from_json(const Json& j) {
  if (!j.is_array()) throw InputError("Dyck word must be a JSON array of letters");
  std::vector<DyckLetter> out;
  for (const auto& e : j) {
    auto b = detail::str(e, "bracket", "Dyck letter");
    if (b != "[" && b != "]") throw InputError("bracket must be \"[\" or \"]\"");
    const Json& idx = detail::field(e, "index", "Dyck letter");
    if (!idx.is_number_unsigned()) throw InputError("Dyck letter index must be a non-negative integer");
    out.push_back({b == "[", detail::str(e, "node", "Dyck letter"), idx.get<std::size_t>()});
  }
  return out;
}

inline void emit(std::ostream& out, const Json& j) { out << j.dump(2) << "\n"; }

/// Rewrites the single-dash long flags -g1/-g2 to --g1/--g2.
inline std::vector<std::string> normalize_args(int argc, const char* const* argv) {
  std::vector<std::string> args;
  for (int k = 1; k < argc; ++k) {
    std::string a = argv[k];
    if (a == "-g1" || a == "-g2") a = "-" + a;
    args.push_back(a);
  }
  return args;
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Context-free grammars of arrows over free categories"};
  app.require_subcommand(1);

  std::string grammar, automaton, word, species, tree, g1, g2, emit_kind = "image", strategy = "bilinear", decode;
  std::size_t max_len = 8, limit = 10, check_bound = 0;
  bool no_trim = false, encode = false;

  auto* validate_cmd = app.add_subcommand("validate", "check a grammar or automaton");
  validate_cmd->add_option("-g,--grammar", grammar, "grammar file");
  validate_cmd->add_option("-m,--automaton", automaton, "automaton file");

  auto* parse_cmd = app.add_subcommand("parse", "recognize a word and print its parses");
  parse_cmd->add_option("-g,--grammar", grammar, "grammar file")->required();
  parse_cmd->add_option("-w,--word", word, "word (bare string or JSON path)")->required();
  parse_cmd->add_option("--limit", limit, "maximum number of parses printed");
  parse_cmd->add_option("--strategy", strategy, "bilinear or direct")->check(CLI::IsMember({"bilinear", "direct"}));

  auto* enumerate_cmd = app.add_subcommand("enumerate", "list a language up to a length bound");
  enumerate_cmd->add_option("-g,--grammar", grammar, "grammar file");
  enumerate_cmd->add_option("-m,--automaton", automaton, "automaton file");
  enumerate_cmd->add_option("--max-len", max_len, "length bound");

  auto* inter_cmd = app.add_subcommand("intersect", "pullback of a grammar along an automaton");
  inter_cmd->add_option("-g,--grammar", grammar, "grammar file")->required();
  inter_cmd->add_option("-m,--automaton", automaton, "automaton file")->required();
  inter_cmd->add_option("--emit", emit_kind, "pullback or image")->check(CLI::IsMember({"pullback", "image"}));
  inter_cmd->add_flag("--no-trim", no_trim, "keep useless triples");

  auto* bil_cmd = app.add_subcommand("bilinearize", "bilinear normal form");
  bil_cmd->add_option("-g,--grammar", grammar, "grammar file")->required();

  auto* contour_cmd = app.add_subcommand("contour", "contour word of a closed tree");
  contour_cmd->add_option("-g,--grammar", grammar, "grammar file providing the species");
  contour_cmd->add_option("-s,--species", species, "species file");
  contour_cmd->add_option("-t,--tree", tree, "tree file")->required();

  auto* dyck_cmd = app.add_subcommand("dyck", "Dyck translation of contour words");
  dyck_cmd->add_option("-g,--grammar", grammar, "grammar file providing the species");
  dyck_cmd->add_option("-s,--species", species, "species file");
  dyck_cmd->add_flag("--encode", encode, "encode the contour word of --tree");
  dyck_cmd->add_option("-t,--tree", tree, "tree file (with --encode)");
  dyck_cmd->add_option("--decode", decode, "file holding a JSON array of letters");

  auto* cs_cmd = app.add_subcommand("cs-decompose", "Chomsky-Schützenberger decomposition");
  cs_cmd->add_option("-g,--grammar", grammar, "grammar file")->required();
  cs_cmd->add_option("--check-bound", check_bound, "verify the decomposition on words up to this length");

  auto* eq_cmd = app.add_subcommand("check-equiv", "bounded language equivalence");
  eq_cmd->add_option("--g1", g1, "first grammar")->required();
  eq_cmd->add_option("--g2", g2, "second grammar")->required();
  eq_cmd->add_option("--max-len", max_len, "length bound");

  auto args = normalize_args(argc, argv);
  std::reverse(args.begin(), args.end());  // CLI11 consumes a reversed vector
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return input_error;
  }

  auto species_source = [&]() -> Species {
    if (!species.empty()) return read_species(species);
    if (!grammar.empty()) return read_grammar(grammar).species;
    throw InputError("need --species or --grammar");
  };

  try {
    if (validate_cmd->parsed()) {
      if (grammar.empty() == automaton.empty()) throw InputError("validate needs exactly one of --grammar, --automaton");
      std::vector<std::string> problems;
      Json report;
      if (!grammar.empty()) {
        std::string text = read_file(grammar);
        Grammar g = looks_like_json(text) ? grammar_from_json(parse_json(text, grammar))
                                          : import_classical(parse_classical(text));
        problems = validate(g);
        report = {{"valid", problems.empty()}, {"problems", problems}};
        if (problems.empty()) report["properties"] = properties_json(properties(g));
      } else {
        Json j = read_json(automaton);
        Automaton m = j.is_object() && j.contains("finals") ? import_classical(classical_nfa_from_json(j))
                                                             : automaton_from_json(j, false);
        problems = check(m);
        report = {{"valid", problems.empty()}, {"problems", problems}};
      }
      emit(out, report);
      return problems.empty() ? ok : property_fails;
    }

    if (parse_cmd->parsed()) {
      Grammar g = read_grammar(grammar);
      Path w = read_word(g.category, word, g.type_of(g.start).left);
      ParseOptions opt;
      opt.strategy = strategy == "direct" ? Strategy::direct : Strategy::bilinear;
      auto colors = recognize(g, w, opt);
      auto forest = parse_forest(g, w, opt);
      auto count = count_parses(forest);
      auto trees = enumerate_parses(forest, limit);
      Json parses = Json::array();
      for (const auto& t : trees.trees) parses.push_back(to_json(t));
      Json report = {{"member", member(g, w, opt)}, {"nonterminals", colors}};
      if (count.infinite)
        report["count"] = "inf";
      else
        report["count"] = count.count;
      report["parses"] = parses;
      emit(out, report);
      return ok;
    }

    if (enumerate_cmd->parsed()) {
      if (grammar.empty() == automaton.empty()) throw InputError("enumerate needs exactly one of --grammar, --automaton");
      std::set<Path> words;
      FiniteGraph base;
      if (!grammar.empty()) {
        Grammar g = read_grammar(grammar);
        words = enumerate_language(g, max_len);
        base = g.category;
      } else {
        Automaton m = any_automaton_from_json(read_json(automaton));
        words = enumerate_regular_language(m, max_len);
        base = m.base;
      }
      Json list = Json::array();
      for (const auto& p : words) list.push_back(word_json(base, p));
      emit(out, {{"max_len", max_len}, {"count", words.size()}, {"words", list}});
      return ok;
    }

    if (inter_cmd->parsed()) {
      Grammar g = read_grammar(grammar);
      Automaton m = any_automaton_from_json(read_json(automaton));
      Grammar h = emit_kind == "pullback" ? pullback_grammar(g, m, !no_trim) : intersect(g, m, !no_trim);
      emit(out, to_json(h));
      return ok;
    }

    if (bil_cmd->parsed()) {
      emit(out, to_json(bilinearize(read_grammar(grammar))));
      return ok;
    }

    if (contour_cmd->parsed()) {
      Species s = species_source();
      DerivationTree t = tree_from_json(read_json(tree));
      Path cw = contour_word(s, t);
      emit(out, {{"contour", cw.gens}, {"length", cw.length()}, {"src", cw.src}, {"dst", cw.dst}});
      return ok;
    }

    if (dyck_cmd->parsed()) {
      Species s = species_source();
      if (encode == !decode.empty()) throw InputError("dyck needs exactly one of --encode, --decode");
      if (encode) {
        if (tree.empty()) throw InputError("dyck --encode needs --tree");
        Path cw = contour_word(s, tree_from_json(read_json(tree)));
        auto letters = dyck_translate(s, cw);
        emit(out, {{"contour", cw.gens}, {"brackets", format_dyck(letters)}, {"letters", letters_json(letters)}});
      } else {
        Path cw = dyck_decode(s, letters_from_json(read_json(decode)));
        emit(out, {{"contour", cw.gens}, {"tree", to_json(contour_decode(s, cw))}});
      }
      return ok;
    }

    if (cs_cmd->parsed()) {
      Grammar g = read_grammar(grammar);
      auto d = cs_decompose(g);
      Json report = {{"chromatic", to_json(d.chromatic)},
                     {"universal", to_json(d.universal)},
                     {"colors_automaton", to_json(d.colors)}};
      bool holds = true;
      if (check_bound > 0) {
        holds = cs_check_bounded(g, check_bound);
        report["check"] = {{"bound", check_bound}, {"holds", holds}};
      }
      emit(out, report);
      return holds ? ok : property_fails;
    }

    if (eq_cmd->parsed()) {
      Grammar a = read_grammar(g1), b = read_grammar(g2);
      auto cex = check_equiv_bounded(a, b, max_len);
      Json report = {{"max_len", max_len}, {"equal", !cex.has_value()}};
      if (cex) report["counterexample"] = word_json(a.category, *cex);
      emit(out, report);
      return cex ? property_fails : ok;
    }
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return input_error;
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
    return input_error;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << "\n";
    return input_error;
  }
  return input_error;
}

}  // namespace arrowcfg::cli
