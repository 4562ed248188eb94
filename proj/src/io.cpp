// Copyright 2026 The tsft Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "tsft/io.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "tsft/error.hpp"

namespace tsft {
namespace {

struct Token {
  std::string_view text;
  int column;  // 1-based
};

struct Line {
  int number;  // 1-based
  std::vector<Token> tokens;
  std::string_view body;  // without comment and surrounding space
  int body_column;
};

std::vector<Line> SplitLines(std::string_view text) {
  std::vector<Line> out;
  int number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(pos, end - pos);
    ++number;
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
    if (auto hash = raw.find('#'); hash != std::string_view::npos) {
      raw = raw.substr(0, hash);
    }
    Line line{number, {}, {}, 1};
    std::size_t i = 0;
    while (i < raw.size()) {
      while (i < raw.size() && (raw[i] == ' ' || raw[i] == '\t')) ++i;
      const std::size_t start = i;
      while (i < raw.size() && raw[i] != ' ' && raw[i] != '\t') ++i;
      if (i > start) {
        line.tokens.push_back(
            {raw.substr(start, i - start), static_cast<int>(start) + 1});
      }
    }
    if (!line.tokens.empty()) {
      const Token& first = line.tokens.front();
      const Token& last = line.tokens.back();
      line.body_column = first.column;
      line.body = raw.substr(first.column - 1, last.column - first.column +
                                                   last.text.size());
    }
    out.push_back(std::move(line));
    if (end == text.size()) break;
    pos = end + 1;
  }
  return out;
}

std::size_t ParseCount(const Token& t, std::string_view key, int line) {
  std::size_t value = 0;
  const char* first = t.text.data() + key.size() + 1;
  const char* last = t.text.data() + t.text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || first == last) {
    throw ParseError("expected a non-negative integer after '" +
                         std::string(key) + "='",
                     line, t.column + static_cast<int>(key.size()) + 1);
  }
  return value;
}

struct Header {
  int line = 0;
  std::map<std::string, std::size_t> values;
  std::map<std::string, int> columns;
};

// Reads "<keyword> key=value ..." from the first non-blank line.
Header ReadHeader(const std::vector<Line>& lines, std::size_t& index,
                  std::string_view keyword,
                  std::initializer_list<std::string_view> keys) {
  while (index < lines.size() && lines[index].tokens.empty()) ++index;
  if (index == lines.size()) {
    throw ParseError("missing header line '" + std::string(keyword) + " ...'",
                     lines.empty() ? 1 : lines.back().number, 1);
  }
  const Line& line = lines[index++];
  if (line.tokens.front().text != keyword) {
    throw ParseError("expected header keyword '" + std::string(keyword) +
                         "', found '" + std::string(line.tokens.front().text) +
                         "'",
                     line.number, line.tokens.front().column);
  }
  Header h;
  h.line = line.number;
  for (std::size_t i = 1; i < line.tokens.size(); ++i) {
    const Token& t = line.tokens[i];
    const auto eq = t.text.find('=');
    const std::string key(t.text.substr(0, eq));
    bool known = false;
    for (auto k : keys) known = known || k == key;
    if (eq == std::string_view::npos || !known) {
      throw ParseError("unknown header field '" + std::string(t.text) + "'",
                       line.number, t.column);
    }
    if (h.values.count(key)) {
      throw ParseError("duplicate header field '" + key + "'", line.number,
                       t.column);
    }
    h.values[key] = ParseCount(t, key, line.number);
    h.columns[key] = t.column;
  }
  return h;
}

unsigned ResolveArity(const Header& h, unsigned arity, std::size_t fallback) {
  std::size_t d = fallback;
  if (auto it = h.values.find("d"); it != h.values.end()) {
    d = it->second;
    if (arity != 0 && arity != d) {
      throw ParseError("arity override " + std::to_string(arity) +
                           " conflicts with d=" + std::to_string(d),
                       h.line, h.columns.at("d"));
    }
  } else if (arity != 0) {
    d = arity;
  }
  if (d == 0 || d > kMaxArity) {
    throw ParseError("arity must be between 1 and " + std::to_string(kMaxArity),
                     h.line, h.columns.count("d") ? h.columns.at("d") : 1);
  }
  return static_cast<unsigned>(d);
}

std::string Join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

}  // namespace

VertexTsft ParseMatrices(std::string_view text, unsigned arity) {
  const auto lines = SplitLines(text);
  std::size_t index = 0;
  const Header header = ReadHeader(lines, index, "tsft", {"n", "d"});
  const auto n_it = header.values.find("n");
  const bool has_n = n_it != header.values.end();
  const std::size_t n = has_n ? n_it->second : 0;

  // Group rows into blocks separated by blank lines.
  struct Group {
    std::vector<const Line*> rows;
  };
  std::vector<Group> groups;
  bool open = false;
  for (; index < lines.size(); ++index) {
    const Line& line = lines[index];
    if (line.tokens.empty()) {
      open = false;
      continue;
    }
    if (!open) groups.emplace_back();
    open = true;
    groups.back().rows.push_back(&line);
  }
  int last_line = lines.empty() ? 1 : lines.front().number;
  for (const Line& line : lines) {
    if (!line.tokens.empty()) last_line = line.number;
  }

  std::vector<BoolMatrix> matrices;
  for (const Group& g : groups) {
    const std::size_t size = g.rows.size();
    if (has_n && size != n) {
      throw ParseError("matrix " + std::to_string(matrices.size()) + " has " +
                           std::to_string(size) + " rows, expected n=" +
                           std::to_string(n),
                       g.rows.front()->number, 1);
    }
    BoolMatrix m(size);
    for (std::size_t i = 0; i < size; ++i) {
      const Line& row = *g.rows[i];
      if (row.tokens.size() != size) {
        throw ParseError("row has " + std::to_string(row.tokens.size()) +
                             " entries, expected " + std::to_string(size) +
                             " (matrices are square)",
                         row.number,
                         row.tokens.size() > size
                             ? row.tokens[size].column
                             : row.tokens.back().column +
                                   static_cast<int>(row.tokens.back().text.size()));
      }
      for (std::size_t j = 0; j < size; ++j) {
        const Token& t = row.tokens[j];
        if (t.text != "0" && t.text != "1") {
          throw ParseError("matrix entries must be 0 or 1, found '" +
                               std::string(t.text) + "'",
                           row.number, t.column);
        }
        m.Set(i, j, t.text == "1");
      }
    }
    matrices.push_back(std::move(m));
  }

  if (has_n && n == 0 && matrices.empty()) {
    const unsigned d = ResolveArity(header, arity, 0);
    return VertexTsft(std::vector<BoolMatrix>(d, BoolMatrix(0)));
  }
  if (matrices.empty()) {
    throw ParseError("no matrices after the header", last_line, 1);
  }
  const unsigned d = ResolveArity(header, arity, matrices.size());
  if (d != matrices.size()) {
    throw ParseError("expected " + std::to_string(d) + " matrices (one per "
                         "direction), found " + std::to_string(matrices.size()),
                     last_line, 1);
  }
  return VertexTsft::Padded(std::move(matrices));
}

ForbiddenTsft ParseForbidden(std::string_view text, unsigned arity) {
  const auto lines = SplitLines(text);
  std::size_t index = 0;
  const Header header =
      ReadHeader(lines, index, "forbidden", {"alphabet", "d"});
  const unsigned d = ResolveArity(header, arity, 2);

  while (index < lines.size() && lines[index].tokens.empty()) ++index;
  if (index == lines.size() || lines[index].body != "forbid:") {
    const int at = index < lines.size() ? lines[index].number
                                        : (lines.empty() ? 1 : lines.back().number);
    throw ParseError("expected the line 'forbid:'", at, 1);
  }
  ++index;

  std::vector<Block> blocks;
  Symbol max_label = 0;
  for (; index < lines.size(); ++index) {
    const Line& line = lines[index];
    if (line.tokens.empty()) continue;
    try {
      blocks.push_back(Block::Parse(line.body, d));
    } catch (const ParseError& e) {
      throw ParseError(e.what(), line.number,
                       line.body_column + std::max(e.column(), 1) - 1);
    } catch (const Error& e) {
      throw ParseError(e.what(), line.number, line.body_column);
    }
    max_label = std::max(max_label, blocks.back().MaxLabel());
  }

  std::size_t q = blocks.empty() ? 1 : max_label + 1;
  if (auto it = header.values.find("alphabet"); it != header.values.end()) {
    if (it->second == 0) {
      throw ParseError("alphabet must be positive", header.line,
                       header.columns.at("alphabet"));
    }
    if (!blocks.empty() && max_label >= it->second) {
      throw ParseError("label " + std::to_string(max_label) +
                           " is outside alphabet=" + std::to_string(it->second),
                       header.line, header.columns.at("alphabet"));
    }
    q = it->second;
  }
  return ForbiddenTsft(q, d, std::move(blocks));
}

LoadedShift ParseShift(std::string_view text, unsigned arity) {
  const auto lines = SplitLines(text);
  std::string_view keyword;
  for (const Line& line : lines) {
    if (!line.tokens.empty()) {
      keyword = line.tokens.front().text;
      break;
    }
  }
  LoadedShift out;
  if (keyword != "forbidden") {
    out.tsft = ParseMatrices(text, arity);
    if (out.tsft.size_mismatch()) {
      std::vector<std::string> sizes;
      for (std::size_t s : out.tsft.native_sizes()) sizes.push_back(std::to_string(s));
      out.log.push_back("matrix sizes " + Join(sizes, ", ") +
                        " differ; padded with zero rows and columns to " +
                        std::to_string(out.tsft.size()));
    }
    return out;
  }

  out.forbidden = ParseForbidden(text, arity);
  const ForbiddenTsft& f = *out.forbidden;
  VertexPresentation p = ToVertexTsft(f);
  out.log.push_back("forbidden set of height " +
                    std::to_string(f.forbidden_height()) + " over " +
                    std::to_string(f.alphabet_size()) + " symbols, arity " +
                    std::to_string(f.arity()));
  if (p.block_height > 1) {
    out.log.push_back("higher-block code m=" + std::to_string(p.block_height) +
                      ": vertices are the allowed " +
                      std::to_string(p.block_height) + "-blocks");
  } else {
    out.log.push_back("nothing above height 1 is forbidden: vertices are the "
                      "allowed symbols");
  }
  for (std::size_t i = 0; i < p.alphabet.size(); ++i) {
    out.log.push_back("  " + std::to_string(i) + " = " +
                      p.alphabet[i].ToString());
  }
  out.tsft = std::move(p.tsft);
  out.alphabet = std::move(p.alphabet);
  return out;
}

LoadedShift LoadShift(const std::string& path, unsigned arity) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kInvalidArgument, "cannot read '" + path + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return ParseShift(buffer.str(), arity);
}

std::string FormatMatrices(const VertexTsft& tsft) {
  std::ostringstream out;
  out << "tsft";
  if (!tsft.size_mismatch()) out << " n=" << tsft.size();
  out << " d=" << tsft.arity() << "\n";
  for (unsigned k = 0; k < tsft.arity(); ++k) {
    if (k) out << "\n";
    const std::size_t n = tsft.native_sizes()[k];
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        out << (j ? " " : "") << (tsft.matrix(static_cast<Direction>(k))(i, j) ? 1 : 0);
      }
      out << "\n";
    }
  }
  return out.str();
}

std::string FormatForbidden(const ForbiddenTsft& tsft) {
  std::ostringstream out;
  out << "forbidden alphabet=" << tsft.alphabet_size() << " d=" << tsft.arity()
      << "\nforbid:\n";
  for (const Block& b : tsft.forbidden()) out << b.ToString() << "\n";
  return out.str();
}

std::string ToDot(const VertexTsft& tsft, const std::vector<std::string>& names) {
  std::ostringstream out;
  out << "digraph tsft {\n";
  out << "  // n=" << tsft.size() << " d=" << tsft.arity() << "\n";
  for (std::size_t v = 0; v < tsft.size(); ++v) {
    out << "  \"" << v << "\"";
    if (v < names.size()) out << " [label=\"" << v << ": " << names[v] << "\"]";
    out << ";\n";
  }
  for (const LabeledEdge& e : LabeledGraph(tsft)) {
    out << "  \"" << e.source << "\" -> \"" << e.target << "\" [label=\""
        << static_cast<unsigned>(e.label) << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace tsft
