#include "biiso/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace biiso {

namespace {

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InputError(std::string("missing field '") + key + "'");
  return j.at(key);
}

long get_long(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_number_integer()) throw InputError(std::string("field '") + key + "' must be an integer");
  return v.get<long>();
}

std::string tail_to_string(const std::string& pattern, char in, char out, const char* all_in, const char* all_out) {
  if (pattern == "1") return all_in;
  if (pattern == "0") return all_out;
  std::string p;
  for (char c : pattern) p += c == '1' ? in : out;
  return "periodic:" + p;
}

std::string tail_from_string(const std::string& s, char in, char out, const char* all_in, const char* all_out) {
  if (s == all_in) return "1";
  if (s == all_out) return "0";
  const std::string prefix = "periodic:";
  if (s.rfind(prefix, 0) != 0 || s.size() == prefix.size()) throw InputError("bad tail '" + s + "'");
  std::string p;
  for (char c : s.substr(prefix.size())) {
    if (c == in) p += '1';
    else if (c == out) p += '0';
    else throw InputError("bad tail pattern character in '" + s + "'");
  }
  return p;
}

void write_number(std::ostringstream& os, double v) {
  if (!std::isfinite(v)) {
    os << "null";
    return;
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  os << buf;
}

void write(std::ostringstream& os, const json& j, int indent) {
  const std::string pad(static_cast<size_t>(indent), ' ');
  const std::string inner(static_cast<size_t>(indent + 2), ' ');
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) os << ",\n";
        first = false;
        os << inner << json(it.key()).dump() << ": ";
        write(os, it.value(), indent + 2);
      }
      os << "\n" << pad << "}";
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      // Arrays of scalars stay on one line.
      bool flat = true;
      for (const auto& v : j) flat = flat && !v.is_structured();
      if (flat) {
        os << "[";
        for (size_t i = 0; i < j.size(); ++i) {
          if (i) os << ", ";
          write(os, j[i], 0);
        }
        os << "]";
        return;
      }
      os << "[\n";
      for (size_t i = 0; i < j.size(); ++i) {
        if (i) os << ",\n";
        os << inner;
        write(os, j[i], indent + 2);
      }
      os << "\n" << pad << "]";
      return;
    }
    case json::value_t::number_float:
      write_number(os, j.get<double>());
      return;
    default:
      os << j.dump();
  }
}

}  // namespace

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
}

json complex_to_json(cd z) { return json::array({z.real(), z.imag()}); }

cd complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw InputError("complex number must be [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

json matrix_to_json(const CMat& m) {
  json rows = json::array();
  for (long r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (long c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
    rows.push_back(row);
  }
  return rows;
}

CMat matrix_from_json(const json& j) {
  if (!j.is_array()) throw InputError("matrix must be a list of rows");
  const long rows = static_cast<long>(j.size());
  if (rows == 0) return CMat(0, 0);
  if (!j[0].is_array()) throw InputError("matrix rows must be lists");
  const long cols = static_cast<long>(j[0].size());
  if (rows > kMaxDim || cols > kMaxDim) throw InputError("matrix too large");
  CMat m(rows, cols);
  for (long r = 0; r < rows; ++r) {
    const json& row = j[static_cast<size_t>(r)];
    if (!row.is_array() || static_cast<long>(row.size()) != cols) throw InputError("matrix rows have different lengths");
    for (long c = 0; c < cols; ++c) m(r, c) = complex_from_json(row[static_cast<size_t>(c)]);
  }
  return m;
}

json symbol_to_json(const OpSymbol& s) {
  json entries = json::array();
  for (const SymbolEntry& e : s.entries()) {
    json je;
    json poly = json::array();
    for (cd c : e.poly) poly.push_back(complex_to_json(c));
    je["poly"] = poly;
    if (e.inner) {
      json zeros = json::array();
      for (cd a : e.inner->zeros) zeros.push_back(complex_to_json(a));
      je["blaschke"] = {{"zeros", zeros}, {"constant", complex_to_json(e.inner->constant)}};
    }
    entries.push_back(je);
  }
  return {{"dim", s.dim()}, {"entries", entries}};
}

OpSymbol symbol_from_json(const json& j) {
  const long d = get_long(j, "dim");
  if (d < 1 || d > 64) throw InputError("symbol dim must be in 1..64");
  const json& ent = field(j, "entries");
  if (!ent.is_array() || static_cast<long>(ent.size()) != d * d) throw InputError("symbol needs dim*dim entries");
  std::vector<SymbolEntry> entries;
  for (const json& je : ent) {
    SymbolEntry e;
    for (const json& c : field(je, "poly")) e.poly.push_back(complex_from_json(c));
    if (je.contains("blaschke")) {
      InnerScalar b;
      const json& bj = je.at("blaschke");
      for (const json& a : field(bj, "zeros")) b.zeros.push_back(complex_from_json(a));
      if (bj.contains("constant")) b.constant = complex_from_json(bj.at("constant"));
      e.inner = b;
    }
    entries.push_back(std::move(e));
  }
  try {
    return OpSymbol(static_cast<int>(d), std::move(entries));
  } catch (const Error& e) {
    throw InputError(e.what());
  }
}

json bcl_to_json(const BCLPair& b) {
  json flags = json::array();
  for (long i = 0; i < b.dim(); ++i) flags.push_back(std::abs(b.p(i, i)) > 0.5 ? 1 : 0);
  json out = {{"dim", b.dim()}, {"U", matrix_to_json(b.u)}, {"P", flags}};
  if (!b.interior_mask.empty()) {
    json mask = json::array();
    for (char c : b.interior_mask) mask.push_back(c ? 1 : 0);
    out["mask"] = mask;
  }
  return out;
}

BCLPair bcl_from_json(const json& j) {
  const long d = get_long(j, "dim");
  const CMat u = matrix_from_json(field(j, "U"));
  const json& flags = field(j, "P");
  if (u.rows() != d || u.cols() != d || !flags.is_array() || static_cast<long>(flags.size()) != d)
    throw InputError("BCL pair: U and P must match dim");
  CMat p = CMat::Zero(d, d);
  for (long i = 0; i < d; ++i) {
    const json& f = flags[static_cast<size_t>(i)];
    if (!f.is_number_integer() || (f.get<int>() != 0 && f.get<int>() != 1)) throw InputError("BCL pair: P flags must be 0 or 1");
    p(i, i) = f.get<int>();
  }
  try {
    BCLPair b = make_bcl(u, p);
    if (j.contains("mask")) {
      for (const json& m : j.at("mask")) b.interior_mask.push_back(m.get<int>() ? 1 : 0);
      validate_bcl(b);
    }
    return b;
  } catch (const Error& e) {
    throw InputError(e.what());
  }
}

json zset_to_json(const ZSet& a) {
  std::string mask;
  for (char c : a.core) mask += c ? '1' : '0';
  return {{"core_lo", a.core_lo},
          {"core_hi", a.core_hi},
          {"mask", mask},
          {"left", tail_to_string(a.left, '1', '0', "all_in", "all_out")},
          {"right", tail_to_string(a.right, '1', '0', "all_in", "all_out")}};
}

ZSet zset_from_json(const json& j) {
  ZSet a;
  a.core_lo = get_long(j, "core_lo");
  a.core_hi = get_long(j, "core_hi");
  const json& m = field(j, "mask");
  if (!m.is_string()) throw InputError("ZSet mask must be a string");
  for (char c : m.get<std::string>()) {
    if (c != '0' && c != '1') throw InputError("ZSet mask must be a 0/1 string");
    a.core.push_back(c == '1' ? 1 : 0);
  }
  a.left = tail_from_string(field(j, "left").get<std::string>(), '1', '0', "all_in", "all_out");
  a.right = tail_from_string(field(j, "right").get<std::string>(), '1', '0', "all_in", "all_out");
  try {
    a.check();
  } catch (const Error& e) {
    throw InputError(e.what());
  }
  return a;
}

json staircase_to_json(const Staircase& s, long lo, long hi) {
  // Tails are read relative to the step window, so re-anchor them there.
  const ZSet& v = s.vertical;
  const long pl = static_cast<long>(v.left.size()), pr = static_cast<long>(v.right.size());
  std::string lp(static_cast<size_t>(pl), '0');
  for (long n = lo - pl; n < lo; ++n) lp[static_cast<size_t>(((n - lo) % pl + pl) % pl)] = v.contains(n) ? '1' : '0';
  std::string rp(static_cast<size_t>(pr), '0');
  for (long n = hi + 1; n <= hi + pr; ++n) rp[static_cast<size_t>((n - hi - 1) % pr)] = v.contains(n) ? '1' : '0';
  return {{"anchor", {{"n", s.n0}, {"i", s.i0}, {"j", s.j0}}},
          {"window_lo", lo},
          {"steps", s.steps(lo, hi)},
          {"left", tail_to_string(lp, 'V', 'H', "all_V", "all_H")},
          {"right", tail_to_string(rp, 'V', 'H', "all_V", "all_H")}};
}

Staircase staircase_from_json(const json& j) {
  const json& an = field(j, "anchor");
  Staircase s;
  s.n0 = get_long(an, "n");
  s.i0 = get_long(an, "i");
  s.j0 = get_long(an, "j");
  const long lo = get_long(j, "window_lo");
  const json& st = field(j, "steps");
  if (!st.is_string()) throw InputError("staircase steps must be a string");
  ZSet v;
  v.core_lo = lo;
  for (char c : st.get<std::string>()) {
    if (c != 'H' && c != 'V') throw InputError("staircase steps use H and V");
    v.core.push_back(c == 'V' ? 1 : 0);
  }
  v.core_hi = lo + static_cast<long>(v.core.size()) - 1;
  v.left = tail_from_string(field(j, "left").get<std::string>(), 'V', 'H', "all_V", "all_H");
  v.right = tail_from_string(field(j, "right").get<std::string>(), 'V', 'H', "all_V", "all_H");
  s.vertical = v;
  try {
    s.check();
  } catch (const Error& e) {
    throw InputError(e.what());
  }
  return s;
}

namespace {

Window graded_from_json(const json& j, int* lo_out, int* hi_out) {
  const long f = get_long(j, "fiber_dim");
  const json& g = field(j, "grades");
  if (!g.is_array() || g.size() != 2) throw InputError("grades must be [lo, hi]");
  const int lo = g[0].get<int>(), hi = g[1].get<int>();
  if (f < 1 || hi < lo || (hi - lo + 1) * f > kMaxDim) throw InputError("bad window shape");
  *lo_out = lo;
  *hi_out = hi;
  return Window::graded(static_cast<int>(f), lo, hi);
}

WindowedOp op_on(const Window& w, const CMat& m, int hi, bool exact_top) {
  if (m.rows() != w.size() || m.cols() != w.size()) throw InputError("operator matrix does not match the window");
  WindowedOp op(w, w, m);
  for (long c = 0; c < w.size(); ++c) op.exact_cols[static_cast<size_t>(c)] = exact_top || w[c].grade < hi;
  return op;
}

}  // namespace

BiIsometry biisometry_from_json(const json& j) {
  int lo = 0, hi = 0;
  const Window w = graded_from_json(j, &lo, &hi);
  const bool exact_top = j.contains("exact_top") && j.at("exact_top").get<bool>();
  const WindowedOp w0 = op_on(w, matrix_from_json(field(j, "w0")), hi, exact_top);
  const WindowedOp w1 = op_on(w, matrix_from_json(field(j, "w1")), hi, exact_top);
  const int top = j.contains("interior_top") ? j.at("interior_top").get<int>() : hi - 2;
  return {w0, w1, w.filter([top](const Label& l) { return l.grade <= top; })};
}

json biisometry_to_json(const BiIsometry& w) {
  return {{"fiber_dim", w.space().fiber_dim()},
          {"grades", {w.space().min_grade(), w.space().max_grade()}},
          {"interior_top", w.interior.max_grade()},
          {"w0", matrix_to_json(w.w0.matrix)},
          {"w1", matrix_to_json(w.w1.matrix)}};
}

WindowedOp operator_from_json(const json& j, Window* interior) {
  int lo = 0, hi = 0;
  const Window w = graded_from_json(j, &lo, &hi);
  const bool exact_top = j.contains("exact_top") && j.at("exact_top").get<bool>();
  WindowedOp v = op_on(w, matrix_from_json(field(j, "v")), hi, exact_top);
  const int top = j.contains("interior_top") ? j.at("interior_top").get<int>() : hi - 1;
  if (interior) *interior = w.filter([top](const Label& l) { return l.grade <= top; });
  return v;
}

std::string dump_report(const json& j) {
  std::ostringstream os;
  write(os, j, 0);
  os << "\n";
  return os.str();
}

}  // namespace biiso
