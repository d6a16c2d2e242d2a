#include "qbforge/io.hpp"

#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

namespace qbforge {
namespace {

struct Token {
  std::string text;
  int line;
  int column;
};

// Splits one line into whitespace-separated tokens with 1-based columns.
std::vector<Token> tokenize(const std::string& line, int line_no) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
      continue;
    }
    std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    out.push_back({line.substr(start, i - start), line_no, static_cast<int>(start) + 1});
  }
  return out;
}

long long parse_int(const Token& t) {
  std::size_t pos = 0;
  long long value = 0;
  try {
    value = std::stoll(t.text, &pos);
  } catch (const std::exception&) {
    throw ParseError("expected an integer, got '" + t.text + "'", t.line, t.column);
  }
  if (pos != t.text.size())
    throw ParseError("expected an integer, got '" + t.text + "'", t.line, t.column);
  return value;
}

struct LineReader {
  std::vector<std::pair<int, std::vector<Token>>> lines;  // non-comment, non-empty

  explicit LineReader(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
      ++line_no;
      auto tokens = tokenize(raw, line_no);
      if (tokens.empty() || tokens.front().text == "c") continue;
      lines.emplace_back(line_no, std::move(tokens));
    }
  }
};

// Reads a 0-terminated list of positive variable ids.
std::vector<Variable> parse_id_list(const std::vector<Token>& tokens, std::size_t first) {
  std::vector<Variable> ids;
  bool terminated = false;
  for (std::size_t i = first; i < tokens.size(); ++i) {
    long long v = parse_int(tokens[i]);
    if (v == 0) {
      if (i + 1 != tokens.size())
        throw ParseError("tokens after the 0 terminator", tokens[i + 1].line, tokens[i + 1].column);
      terminated = true;
      break;
    }
    if (v < 0) throw ParseError("quantifier lines take positive ids", tokens[i].line, tokens[i].column);
    ids.push_back(static_cast<Variable>(v));
  }
  if (!terminated) {
    const Token& last = tokens.back();
    throw ParseError("missing 0 terminator", last.line, last.column + static_cast<int>(last.text.size()));
  }
  return ids;
}

QuantifiedFormula parse_prefix_and_clauses(const LineReader& reader, std::size_t line_index,
                                           Semantics semantics, std::size_t nvars, std::size_t nclauses,
                                           bool qext) {
  QuantifiedFormula f;
  f.semantics = semantics;
  std::set<Variable> declared;

  auto declare = [&](std::vector<Variable>& block, const std::vector<Token>& tokens) {
    for (Variable v : parse_id_list(tokens, 1)) {
      if (!declared.insert(v).second)
        throw ParseError("variable " + std::to_string(v) + " declared twice", tokens[0].line,
                         tokens[0].column);
      block.push_back(v);
    }
  };

  bool seen_existential = false;
  std::size_t i = line_index;
  for (; i < reader.lines.size(); ++i) {
    const auto& tokens = reader.lines[i].second;
    if (tokens[0].text == "a") {
      if (seen_existential)
        throw ParseError("universal block after existential block: only forall-exists prefixes are supported",
                         tokens[0].line, tokens[0].column);
      declare(f.universals, tokens);
    } else if (tokens[0].text == "e") {
      seen_existential = true;
      declare(f.existentials, tokens);
    } else {
      break;
    }
  }

  for (; i < reader.lines.size(); ++i) {
    const auto& tokens = reader.lines[i].second;
    std::vector<ClauseAtom> atoms;
    bool terminated = false;
    for (std::size_t t = 0; t < tokens.size(); ++t) {
      const Token& tok = tokens[t];
      if (tok.text == "T" || tok.text == "F") {
        if (!qext) throw ParseError("constants are not valid in QDIMACS", tok.line, tok.column);
        if (semantics == Semantics::sat)
          throw ParseError("constant in a sat-semantics file", tok.line, tok.column);
        if (!f.universals.empty())
          throw ParseError("constants require an instance without universal variables", tok.line,
                           tok.column);
        atoms.push_back(constant_atom(tok.text == "T"));
        continue;
      }
      long long v = parse_int(tok);
      if (v == 0) {
        if (t + 1 != tokens.size())
          throw ParseError("tokens after the 0 terminator", tokens[t + 1].line, tokens[t + 1].column);
        terminated = true;
        break;
      }
      Variable var = static_cast<Variable>(v < 0 ? -v : v);
      if (declared.count(var) == 0)
        throw ParseError("undeclared variable " + std::to_string(var), tok.line, tok.column);
      atoms.push_back(Literal{var, v < 0});
    }
    const Token& last = tokens.back();
    if (!terminated)
      throw ParseError("missing 0 terminator", last.line, last.column + static_cast<int>(last.text.size()));
    if (atoms.empty()) throw ParseError("empty clause", tokens[0].line, tokens[0].column);
    if (atoms.size() > 3)
      throw ParseError("clause has " + std::to_string(atoms.size()) + " atoms; at most 3 are allowed",
                       tokens[0].line, tokens[0].column);
    f.matrix.push_back(Clause(std::move(atoms)));
  }

  if (f.matrix.size() != nclauses)
    throw ParseError("header declares " + std::to_string(nclauses) + " clauses, found " +
                         std::to_string(f.matrix.size()),
                     reader.lines.empty() ? 1 : reader.lines.back().first, 1);
  if (declared.size() != nvars)
    throw ParseError("header declares " + std::to_string(nvars) + " variables, found " +
                         std::to_string(declared.size()),
                     reader.lines.empty() ? 1 : reader.lines.back().first, 1);
  f.check_structure();
  return f;
}

}  // namespace

QuantifiedFormula parse_qext(std::string_view text) {
  LineReader reader(text);
  if (reader.lines.empty()) throw ParseError("missing header line", 1, 1);
  const auto& header = reader.lines[0].second;
  if (header.size() != 5 || header[0].text != "p" || header[1].text != "qext")
    throw ParseError("expected header 'p qext <nvars> <nclauses> <sat|nae>'", header[0].line,
                     header[0].column);
  long long nvars = parse_int(header[2]);
  long long nclauses = parse_int(header[3]);
  if (nvars < 0 || nclauses < 0) throw ParseError("negative counts in header", header[2].line, header[2].column);
  Semantics semantics;
  if (header[4].text == "sat")
    semantics = Semantics::sat;
  else if (header[4].text == "nae")
    semantics = Semantics::nae;
  else
    throw ParseError("semantics must be 'sat' or 'nae', got '" + header[4].text + "'", header[4].line,
                     header[4].column);
  return parse_prefix_and_clauses(reader, 1, semantics, static_cast<std::size_t>(nvars),
                                  static_cast<std::size_t>(nclauses), /*qext=*/true);
}

std::string serialize_qext(const QuantifiedFormula& formula) {
  std::ostringstream out;
  out << "p qext " << formula.variable_count() << " " << formula.matrix.size() << " "
      << to_string(formula.semantics) << "\n";
  auto block = [&](char tag, const std::vector<Variable>& vars) {
    if (vars.empty()) return;
    out << tag;
    for (Variable v : vars) out << " " << v;
    out << " 0\n";
  };
  block('a', formula.universals);
  block('e', formula.existentials);
  for (const auto& clause : formula.matrix) {
    bool first = true;
    for (const auto& atom : clause.atoms()) {
      if (!first) out << " ";
      first = false;
      if (atom.is_constant())
        out << (atom.constant_value() ? "T" : "F");
      else
        out << (atom.literal().negated ? -atom.literal().var : atom.literal().var);
    }
    out << " 0\n";
  }
  return out.str();
}

std::string export_qdimacs(const QuantifiedFormula& formula) {
  if (formula.semantics != Semantics::sat)
    throw PreconditionError("QDIMACS export requires SAT semantics");
  if (formula.has_constants()) throw PreconditionError("QDIMACS export requires a constant-free matrix");
  std::ostringstream out;
  out << "p cnf " << formula.max_variable_id() << " " << formula.matrix.size() << "\n";
  auto block = [&](char tag, const std::vector<Variable>& vars) {
    if (vars.empty()) return;
    out << tag;
    for (Variable v : vars) out << " " << v;
    out << " 0\n";
  };
  block('a', formula.universals);
  block('e', formula.existentials);
  for (const auto& clause : formula.matrix) {
    bool first = true;
    for (const auto& atom : clause.atoms()) {
      if (!first) out << " ";
      first = false;
      out << (atom.literal().negated ? -atom.literal().var : atom.literal().var);
    }
    out << " 0\n";
  }
  return out.str();
}

QuantifiedFormula import_qdimacs(std::string_view text) {
  LineReader reader(text);
  if (reader.lines.empty()) throw ParseError("missing header line", 1, 1);
  const auto& header = reader.lines[0].second;
  if (header.size() != 4 || header[0].text != "p" || header[1].text != "cnf")
    throw ParseError("expected header 'p cnf <nvars> <nclauses>'", header[0].line, header[0].column);
  parse_int(header[2]);  // nvars in QDIMACS is the max index; declarations are authoritative
  long long nclauses = parse_int(header[3]);
  LineReader copy = reader;
  // variable count check is deferred to declarations: count declared ids
  std::size_t declared = 0;
  for (const auto& [line_no, tokens] : reader.lines)
    if (tokens[0].text == "a" || tokens[0].text == "e") declared += parse_id_list(tokens, 1).size();
  return parse_prefix_and_clauses(copy, 1, Semantics::sat, declared, static_cast<std::size_t>(nclauses),
                                  /*qext=*/false);
}

QuantifiedFormula read_formula_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();
  // dispatch on the p-line
  std::istringstream scan(text);
  std::string line;
  while (std::getline(scan, line)) {
    auto tokens = tokenize(line, 1);
    if (tokens.empty() || tokens[0].text == "c") continue;
    if (tokens.size() >= 2 && tokens[0].text == "p" && tokens[1].text == "cnf") return import_qdimacs(text);
    break;
  }
  return parse_qext(text);
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open file for writing: " + path);
  out << content;
}

}  // namespace qbforge
