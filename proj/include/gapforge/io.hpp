#pragma once

// Line-oriented text formats. Every document starts with its kind keyword
// (QUADSYS, CODE, MDP, NCP) followed by the field header line
//   FIELD p=<p> m=<m> modulus=<c0,...,cm>
// Matrices are written as `MATRIX r=<rows> c=<cols>` and `rows` lines of
// space-separated element indices. Coordinates in files are 1-based.
// Blank lines and lines starting with '#' are ignored on input.

#include <charconv>
#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "gapforge/codes.hpp"
#include "gapforge/error.hpp"
#include "gapforge/field.hpp"
#include "gapforge/frontend.hpp"
#include "gapforge/linalg.hpp"
#include "gapforge/reduction.hpp"

namespace gapforge::io {

// ---------------------------------------------------------------------------
// Writing

inline void write_row(std::ostream& os, std::span<const Elem> row) {
  for (std::size_t j = 0; j < row.size(); ++j) {
    if (j) os << ' ';
    os << row[j];
  }
  os << '\n';
}

inline void write_matrix(std::ostream& os, const Matrix& m) {
  os << "MATRIX r=" << m.rows() << " c=" << m.cols() << '\n';
  for (std::size_t i = 0; i < m.rows(); ++i) write_row(os, m.row(i));
}

inline void write_vectors(std::ostream& os, std::span<const Vector> rows, std::size_t cols) {
  os << "MATRIX r=" << rows.size() << " c=" << cols << '\n';
  for (const auto& v : rows) write_row(os, v.entries());
}

inline std::string write_quadsys(const QuadraticSystem& sys) {
  std::ostringstream os;
  os << "QUADSYS\n" << sys.field->header() << '\n';
  os << "n=" << sys.n_vars << " m=" << sys.size() << " distinguished=" << sys.distinguished + 1 << '\n';
  for (const auto& q : sys.forms) write_matrix(os, q);
  return os.str();
}

inline std::string write_code(const LinearCode& code) {
  std::ostringstream os;
  os << "CODE\n" << code.field()->header() << '\n';
  os << "N=" << code.length() << " n=" << code.dimension() << " d=";
  if (code.d) os << *code.d;
  else os << "none";
  os << " eps=";
  if (code.eps) os << code.eps->str();
  else os << "none";
  os << " exact=" << (code.d_exact ? 1 : 0) << '\n';
  write_matrix(os, code.gen);
  return os.str();
}

namespace detail {

inline void write_instance_header(std::ostream& os, std::size_t length, std::size_t dim,
                                  const std::optional<std::size_t>& distinguished, const InstanceMeta& meta) {
  os << "L=" << length << " dim=" << dim << " distinguished=";
  if (distinguished) os << *distinguished + 1;
  else os << "none";
  os << " yes=" << meta.yes_threshold << " no=" << meta.no_threshold << " t=" << meta.t << '\n';
  os << "META d=" << meta.d << " eps=" << meta.eps.str() << '\n';
  if (!meta.provenance.empty()) os << "PROVENANCE " << meta.provenance << '\n';
}

}  // namespace detail

inline std::string write_mdp(const MDPInstance& inst) {
  std::ostringstream os;
  os << "MDP\n" << inst.field->header() << '\n';
  detail::write_instance_header(os, inst.length, inst.dimension(), inst.distinguished, inst.meta);
  write_vectors(os, inst.basis, inst.length);
  return os.str();
}

inline std::string write_ncp(const NCPInstance& inst) {
  std::ostringstream os;
  os << "NCP\n" << inst.field->header() << '\n';
  detail::write_instance_header(os, inst.length, inst.dimension(), inst.distinguished, inst.meta);
  os << "OFFSET ";
  write_row(os, inst.offset.entries());
  write_vectors(os, inst.hom_basis, inst.length);
  return os.str();
}

// ---------------------------------------------------------------------------
// Reading

class LineReader {
 public:
  explicit LineReader(std::string_view text) : text_(text) {}

  /// Next non-blank, non-comment line; ParseError at end of input.
  std::string_view next(const char* expecting) {
    if (auto line = try_next()) return *line;
    throw ParseError(ErrorKind::ParseError, line_no_, std::string("unexpected end of input, expected ") + expecting);
  }

  std::optional<std::string_view> try_next() {
    while (pos_ < text_.size()) {
      const std::size_t end = std::min(text_.find('\n', pos_), text_.size());
      std::string_view line = text_.substr(pos_, end - pos_);
      pos_ = end + 1;
      ++line_no_;
      while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t')) line.remove_suffix(1);
      while (!line.empty() && (line.front() == ' ' || line.front() == '\t')) line.remove_prefix(1);
      if (line.empty() || line.front() == '#') continue;
      return line;
    }
    return std::nullopt;
  }

  /// Peeks whether the next meaningful line starts with `keyword`.
  bool next_starts_with(std::string_view keyword) {
    const auto saved_pos = pos_;
    const auto saved_line = line_no_;
    auto line = try_next();
    pos_ = saved_pos;
    line_no_ = saved_line;
    return line && line->substr(0, keyword.size()) == keyword;
  }

  std::size_t line() const noexcept { return line_no_; }

  [[noreturn]] void error(const std::string& reason) const {
    throw ParseError(ErrorKind::ParseError, line_no_, reason);
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_no_ = 0;
};

inline std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

template <class T>
T parse_number(LineReader& r, std::string_view s) {
  T value{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) r.error("not a number: '" + std::string(s) + "'");
  return value;
}

/// Parses `key=value` tokens (after an optional leading keyword).
inline std::map<std::string, std::string, std::less<>> parse_keys(LineReader& r, std::string_view line,
                                                                  std::string_view keyword = {}) {
  auto tok = split_ws(line);
  std::size_t start = 0;
  if (!keyword.empty()) {
    if (tok.empty() || tok[0] != keyword) r.error("expected '" + std::string(keyword) + "'");
    start = 1;
  }
  std::map<std::string, std::string, std::less<>> kv;
  for (std::size_t i = start; i < tok.size(); ++i) {
    const auto eq = tok[i].find('=');
    if (eq == std::string_view::npos) r.error("expected key=value, got '" + std::string(tok[i]) + "'");
    kv.emplace(std::string(tok[i].substr(0, eq)), std::string(tok[i].substr(eq + 1)));
  }
  return kv;
}

inline const std::string& require_key(LineReader& r, const std::map<std::string, std::string, std::less<>>& kv,
                                      std::string_view key) {
  auto it = kv.find(key);
  if (it == kv.end()) r.error("missing key '" + std::string(key) + "'");
  return it->second;
}

inline FieldPtr read_field(LineReader& r) {
  auto line = r.next("FIELD header");
  auto kv = parse_keys(r, line, "FIELD");
  const auto p = parse_number<std::uint32_t>(r, require_key(r, kv, "p"));
  const auto m = parse_number<unsigned>(r, require_key(r, kv, "m"));
  std::vector<Elem> modulus;
  std::string_view mod = require_key(r, kv, "modulus");
  while (!mod.empty()) {
    const auto comma = mod.find(',');
    modulus.push_back(parse_number<Elem>(r, mod.substr(0, comma)));
    mod = comma == std::string_view::npos ? std::string_view{} : mod.substr(comma + 1);
  }
  if (modulus.size() != m + 1) r.error("modulus length does not match m");
  try {
    auto fp = Field::prime(p);
    if (m == 1 && modulus == std::vector<Elem>{0, 1}) return fp;
    return Field::extension(std::move(fp), std::move(modulus));
  } catch (const Error& e) {
    r.error(std::string("invalid field: ") + e.what());
  }
}

inline std::vector<Elem> read_row(LineReader& r, const Field& f, std::string_view line, std::size_t cols) {
  auto tok = split_ws(line);
  if (tok.size() != cols) r.error("expected " + std::to_string(cols) + " entries, got " + std::to_string(tok.size()));
  std::vector<Elem> row;
  row.reserve(cols);
  for (auto t : tok) {
    const auto e = parse_number<Elem>(r, t);
    if (!f.contains(e)) r.error("entry " + std::to_string(e) + " outside the field");
    row.push_back(e);
  }
  return row;
}

inline Matrix read_matrix(LineReader& r, const FieldPtr& field) {
  auto kv = parse_keys(r, r.next("MATRIX header"), "MATRIX");
  const auto rows = parse_number<std::size_t>(r, require_key(r, kv, "r"));
  const auto cols = parse_number<std::size_t>(r, require_key(r, kv, "c"));
  std::vector<Elem> data;
  data.reserve(rows * cols);
  for (std::size_t i = 0; i < rows; ++i) {
    auto row = read_row(r, *field, r.next("matrix row"), cols);
    data.insert(data.end(), row.begin(), row.end());
  }
  return Matrix(field, rows, cols, std::move(data));
}

inline void expect_kind(LineReader& r, std::string_view kind) {
  auto line = r.next(std::string(kind).c_str());
  if (line != kind) r.error("expected document kind '" + std::string(kind) + "'");
}

inline std::optional<std::size_t> read_coordinate(LineReader& r, std::string_view s, std::size_t length) {
  if (s == "none") return std::nullopt;
  const auto idx = parse_number<std::size_t>(r, s);
  if (idx < 1 || idx > length) r.error("coordinate out of range");
  return idx - 1;
}

inline QuadraticSystem read_quadsys(std::string_view text) {
  LineReader r(text);
  expect_kind(r, "QUADSYS");
  QuadraticSystem sys;
  sys.field = read_field(r);
  auto kv = parse_keys(r, r.next("system header"));
  sys.n_vars = parse_number<std::size_t>(r, require_key(r, kv, "n"));
  const auto m = parse_number<std::size_t>(r, require_key(r, kv, "m"));
  auto dist = read_coordinate(r, require_key(r, kv, "distinguished"), sys.n_vars);
  if (!dist) r.error("a quadratic system needs a distinguished variable");
  sys.distinguished = *dist;
  for (std::size_t l = 0; l < m; ++l) {
    auto q = read_matrix(r, sys.field);
    if (q.rows() != sys.n_vars || q.cols() != sys.n_vars) r.error("coefficient matrix is not n x n");
    sys.forms.push_back(std::move(q));
  }
  return sys;
}

inline LinearCode read_code(std::string_view text) {
  LineReader r(text);
  expect_kind(r, "CODE");
  auto field = read_field(r);
  auto kv = parse_keys(r, r.next("code header"));
  const auto big_n = parse_number<std::size_t>(r, require_key(r, kv, "N"));
  const auto n = parse_number<std::size_t>(r, require_key(r, kv, "n"));
  LinearCode code;
  if (const auto& d = require_key(r, kv, "d"); d != "none") code.d = parse_number<std::size_t>(r, d);
  if (const auto& e = require_key(r, kv, "eps"); e != "none") {
    try {
      code.eps = Rational::parse(e);
    } catch (const Error& err) {
      r.error(err.what());
    }
  }
  if (auto it = kv.find("exact"); it != kv.end()) code.d_exact = it->second == "1";
  code.gen = read_matrix(r, field);
  if (code.gen.rows() != big_n || code.gen.cols() != n) r.error("generator shape does not match N and n");
  return code;
}

namespace detail {

struct InstanceHeader {
  std::size_t length = 0;
  std::size_t dim = 0;
  std::optional<std::size_t> distinguished;
  InstanceMeta meta;
};

inline InstanceHeader read_instance_header(LineReader& r) {
  InstanceHeader h;
  auto kv = parse_keys(r, r.next("instance header"));
  h.length = parse_number<std::size_t>(r, require_key(r, kv, "L"));
  h.dim = parse_number<std::size_t>(r, require_key(r, kv, "dim"));
  h.distinguished = read_coordinate(r, require_key(r, kv, "distinguished"), h.length);
  h.meta.yes_threshold = parse_number<std::uint64_t>(r, require_key(r, kv, "yes"));
  h.meta.no_threshold = parse_number<std::uint64_t>(r, require_key(r, kv, "no"));
  h.meta.t = parse_number<unsigned>(r, require_key(r, kv, "t"));
  if (r.next_starts_with("META")) {
    auto meta = parse_keys(r, r.next("META"), "META");
    h.meta.d = parse_number<std::size_t>(r, require_key(r, meta, "d"));
    try {
      h.meta.eps = Rational::parse(require_key(r, meta, "eps"));
    } catch (const Error& err) {
      r.error(err.what());
    }
  }
  if (r.next_starts_with("PROVENANCE")) {
    auto line = r.next("PROVENANCE");
    line.remove_prefix(std::string_view("PROVENANCE").size());
    while (!line.empty() && line.front() == ' ') line.remove_prefix(1);
    h.meta.provenance = std::string(line);
  }
  return h;
}

inline std::vector<Vector> read_basis(LineReader& r, const FieldPtr& field, const InstanceHeader& h) {
  const Matrix m = read_matrix(r, field);
  if (m.rows() != h.dim || m.cols() != h.length) r.error("basis shape does not match L and dim");
  std::vector<Vector> basis;
  for (std::size_t i = 0; i < m.rows(); ++i) basis.push_back(m.row_vector(i));
  return basis;
}

}  // namespace detail

inline MDPInstance read_mdp(std::string_view text) {
  LineReader r(text);
  expect_kind(r, "MDP");
  MDPInstance inst;
  inst.field = read_field(r);
  const auto h = detail::read_instance_header(r);
  inst.length = h.length;
  inst.distinguished = h.distinguished;
  inst.meta = h.meta;
  inst.basis = detail::read_basis(r, inst.field, h);
  return inst;
}

inline NCPInstance read_ncp(std::string_view text) {
  LineReader r(text);
  expect_kind(r, "NCP");
  NCPInstance inst;
  inst.field = read_field(r);
  const auto h = detail::read_instance_header(r);
  inst.length = h.length;
  inst.distinguished = h.distinguished;
  inst.meta = h.meta;
  auto line = r.next("OFFSET");
  if (line.substr(0, 6) != "OFFSET") r.error("expected OFFSET line");
  line.remove_prefix(6);
  inst.offset = Vector(inst.field, read_row(r, *inst.field, line, h.length));
  inst.hom_basis = detail::read_basis(r, inst.field, h);
  return inst;
}

/// First keyword of a document (QUADSYS, CODE, MDP, NCP).
inline std::string document_kind(std::string_view text) {
  LineReader r(text);
  auto line = r.try_next();
  if (!line) return {};
  auto tok = split_ws(*line);
  return tok.empty() ? std::string{} : std::string(tok[0]);
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::Io, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorKind::Io, "cannot write '" + path + "'");
  out << content;
  if (!out) fail(ErrorKind::Io, "write failed for '" + path + "'");
}

}  // namespace gapforge::io
