#include "modkit/mdio.hpp"

#include <cctype>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace modkit {

const char* pcode_name(Pcode c) {
  switch (c) {
    case Pcode::Syntax: return "SyntaxError";
    case Pcode::MissingEntry: return "MissingEntry";
    case Pcode::DuplicateEntry: return "DuplicateEntry";
    case Pcode::IndexOutOfRange: return "IndexOutOfRange";
    case Pcode::BadConductor: return "BadConductor";
  }
  return "Unknown";
}

namespace {

struct Cursor {
  std::string_view s;
  std::size_t pos = 0;
  int line;
  void skip_ws() {
    while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
  }
  bool done() {
    skip_ws();
    return pos >= s.size();
  }
  std::string word() {
    skip_ws();
    std::size_t start = pos;
    while (pos < s.size() && !std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    return std::string(s.substr(start, pos - start));
  }
  int integer() {
    skip_ws();
    std::size_t start = pos;
    if (pos < s.size() && s[pos] == '-') ++pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == start || (s[start] == '-' && pos == start + 1))
      throw ParseError(Pcode::Syntax, line, "expected integer");
    return std::stoi(std::string(s.substr(start, pos - start)));
  }
  std::string quoted() {
    skip_ws();
    if (pos >= s.size() || s[pos] != '"')
      throw ParseError(Pcode::Syntax, line, "expected quoted string");
    std::size_t end = s.find('"', pos + 1);
    if (end == std::string_view::npos)
      throw ParseError(Pcode::Syntax, line, "unterminated string");
    std::string out(s.substr(pos + 1, end - pos - 1));
    pos = end + 1;
    return out;
  }
  void expect(char c) {
    skip_ws();
    if (pos >= s.size() || s[pos] != c)
      throw ParseError(Pcode::Syntax, line, std::string("expected '") + c + "'");
    ++pos;
  }
  std::string_view rest() {
    skip_ws();
    return s.substr(pos);
  }
};

}  // namespace

RawModularData parse_mdfile(std::string_view text) {
  std::optional<int> rank, conductor;
  std::optional<std::string> name, source;
  std::vector<std::optional<std::string>> labels;
  std::vector<std::vector<std::optional<Cyc>>> smat;
  std::vector<std::optional<Cyc>> tvec;
  bool version_seen = false;
  int line_no = 0, last_line = 0;

  auto need_header = [&](Cursor& c) {
    if (!rank) throw ParseError(Pcode::Syntax, c.line, "rank must be declared first");
    if (!conductor) throw ParseError(Pcode::Syntax, c.line, "conductor must be declared first");
  };
  auto check_index = [&](Cursor& c, int i) {
    if (i < 0 || i >= *rank)
      throw ParseError(Pcode::IndexOutOfRange, c.line, "index " + std::to_string(i));
  };
  auto literal = [&](Cursor& c) {
    try {
      return parse_cyc_literal(c.rest(), *conductor);
    } catch (const LiteralError& e) {
      throw ParseError(Pcode::Syntax, c.line, e.what());
    }
  };

  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t nl = text.find('\n', start);
    std::string_view raw_line =
        text.substr(start, nl == std::string_view::npos ? text.size() - start : nl - start);
    start = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (std::size_t hash = raw_line.find('#'); hash != std::string_view::npos)
      raw_line = raw_line.substr(0, hash);
    Cursor cur{raw_line, 0, line_no};
    if (cur.done()) continue;
    last_line = line_no;

    if (!version_seen) {
      std::string w = cur.word();
      if (w != "mdfile" || cur.word() != "v1" || !cur.done())
        throw ParseError(Pcode::Syntax, line_no, "expected 'mdfile v1'");
      version_seen = true;
      continue;
    }
    std::string key = cur.word();
    if (key == "rank") {
      if (rank) throw ParseError(Pcode::DuplicateEntry, line_no, "rank");
      int n = cur.integer();
      if (n < 1) throw ParseError(Pcode::Syntax, line_no, "rank must be positive");
      rank = n;
      labels.assign(n, std::nullopt);
      smat.assign(n, std::vector<std::optional<Cyc>>(n));
      tvec.assign(n, std::nullopt);
    } else if (key == "conductor") {
      if (conductor) throw ParseError(Pcode::DuplicateEntry, line_no, "conductor");
      int n = cur.integer();
      if (n < 1) throw ParseError(Pcode::BadConductor, line_no, std::to_string(n));
      conductor = n;
    } else if (key == "name") {
      if (name) throw ParseError(Pcode::DuplicateEntry, line_no, "name");
      name = cur.quoted();
    } else if (key == "source") {
      if (source) throw ParseError(Pcode::DuplicateEntry, line_no, "source");
      source = cur.quoted();
    } else if (key == "label") {
      need_header(cur);
      int i = cur.integer();
      check_index(cur, i);
      if (labels[i]) throw ParseError(Pcode::DuplicateEntry, line_no, "label " + std::to_string(i));
      labels[i] = cur.quoted();
    } else if (key == "S") {
      need_header(cur);
      int i = cur.integer();
      int j = cur.integer();
      check_index(cur, i);
      check_index(cur, j);
      cur.expect('=');
      if (smat[i][j])
        throw ParseError(Pcode::DuplicateEntry, line_no,
                         "S " + std::to_string(i) + " " + std::to_string(j));
      smat[i][j] = literal(cur);
    } else if (key == "T") {
      need_header(cur);
      int i = cur.integer();
      check_index(cur, i);
      cur.expect('=');
      if (tvec[i]) throw ParseError(Pcode::DuplicateEntry, line_no, "T " + std::to_string(i));
      tvec[i] = literal(cur);
    } else {
      throw ParseError(Pcode::Syntax, line_no, "unknown directive '" + key + "'");
    }
    // S/T literals consume the rest of the line themselves
    if (key != "S" && key != "T" && !cur.done())
      throw ParseError(Pcode::Syntax, line_no, "trailing input");
  }

  if (!version_seen) throw ParseError(Pcode::Syntax, 1, "expected 'mdfile v1'");
  if (!rank) throw ParseError(Pcode::Syntax, last_line, "missing rank");
  if (!conductor) throw ParseError(Pcode::Syntax, last_line, "missing conductor");

  const int n = *rank;
  RawModularData raw;
  raw.rank = n;
  raw.conductor = *conductor;
  raw.name = name.value_or("");
  raw.source = source.value_or("");
  raw.s = CycMatrix(n, n);
  raw.theta = CycVector(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      // upper triangle required; lower triangle falls back to the mirror
      const std::optional<Cyc>& up = smat[i][j];
      const std::optional<Cyc>& lo = smat[j][i];
      if (!up && !lo)
        throw ParseError(Pcode::MissingEntry, last_line,
                         "S " + std::to_string(i) + " " + std::to_string(j));
      raw.s(i, j) = up ? *up : *lo;
      raw.s(j, i) = lo ? *lo : *up;
    }
  for (int i = 0; i < n; ++i) {
    if (!tvec[i])
      throw ParseError(Pcode::MissingEntry, last_line, "T " + std::to_string(i));
    raw.theta(i) = *tvec[i];
  }
  raw.labels.resize(n);
  for (int i = 0; i < n; ++i) raw.labels[i] = labels[i] ? *labels[i] : std::to_string(i);
  return raw;
}

std::string serialize(const ModularData& md) {
  std::ostringstream out;
  out << "mdfile v1\n";
  if (!md.name.empty()) out << "name \"" << md.name << "\"\n";
  if (!md.source.empty()) out << "source \"" << md.source << "\"\n";
  out << "rank " << md.rank << "\n";
  out << "conductor " << md.conductor << "\n";
  for (int i = 0; i < md.rank; ++i)
    out << "label " << i << " \"" << md.labels[i] << "\"\n";
  for (int i = 0; i < md.rank; ++i)
    for (int j = i; j < md.rank; ++j)
      out << "S " << i << " " << j << " = " << format_cyc_literal(md.s(i, j), md.conductor)
          << "\n";
  for (int i = 0; i < md.rank; ++i)
    out << "T " << i << " = " << format_cyc_literal(md.theta(i), md.conductor) << "\n";
  return out.str();
}

}  // namespace modkit
