#include "ssqp/trace_io.hpp"

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "ssqp/error.hpp"

namespace ssqp {

namespace {

void add_vector_columns(std::vector<std::string>& cols, const char* name, int size) {
  for (int i = 0; i < size; ++i) cols.push_back(std::string(name) + "[" + std::to_string(i) + "]");
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

class RowWriter {
 public:
  explicit RowWriter(std::ostream& out) : out_(out) {}
  void put(const std::string& s) {
    if (!first_) out_ << ',';
    out_ << s;
    first_ = false;
  }
  void put(double v) { put(fmt(v)); }
  void put(int v) { put(std::to_string(v)); }
  void put(bool v) { put(std::string(v ? "1" : "0")); }
  void put(const ExtendedReal& v) { put(to_string(v)); }
  void put(const Vec& v, int expected) {
    if (v.size() != expected) throw Error(ErrorCode::kDimensionMismatch, "trace vector size");
    for (int i = 0; i < expected; ++i) put(v(i));
  }
  void end() {
    out_ << '\n';
    first_ = true;
  }

 private:
  std::ostream& out_;
  bool first_ = true;
};

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

class RowReader {
 public:
  RowReader(const std::vector<std::string>& cells, int line) : cells_(cells), line_(line) {}

  const std::string& next() {
    if (pos_ >= cells_.size()) fail("too few columns");
    return cells_[pos_++];
  }
  double real() {
    const std::string& s = next();
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) fail("bad number '" + s + "'");
    return v;
  }
  int integer() {
    const std::string& s = next();
    int v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) fail("bad integer '" + s + "'");
    return v;
  }
  bool flag() {
    const std::string& s = next();
    if (s == "0") return false;
    if (s == "1") return true;
    fail("bad flag '" + s + "'");
    return false;
  }
  ExtendedReal extended() {
    const std::string& s = next();
    try {
      return parse_extended(s);
    } catch (const Error&) {
      fail("bad extended real '" + s + "'");
    }
    return ExtendedReal::infinity();
  }
  Vec vec(int size) {
    Vec v(size);
    for (int i = 0; i < size; ++i) v(i) = real();
    return v;
  }
  void finish() {
    if (pos_ != cells_.size()) fail("too many columns");
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorCode::kIoError, "trace line " + std::to_string(line_) + ": " + what);
  }

 private:
  const std::vector<std::string>& cells_;
  int line_;
  std::size_t pos_ = 0;
};

}  // namespace

std::vector<std::string> trace_columns(int n, int m) {
  std::vector<std::string> cols{"schema_version", "k"};
  add_vector_columns(cols, "x", n);
  add_vector_columns(cols, "g", n);
  add_vector_columns(cols, "d", n);
  add_vector_columns(cols, "y", m);
  for (const char* c : {"tau_trial", "tau", "xi_trial", "xi", "alpha_hat_init",
                        "alpha_tilde_init", "alpha_hat", "alpha_tilde", "alpha", "f", "c_norm1",
                        "tau_decreased", "xi_decreased"}) {
    cols.emplace_back(c);
  }
  add_vector_columns(cols, "d_true", n);
  add_vector_columns(cols, "y_true", m);
  for (const char* c : {"tau_trial_true", "tau_hat", "delta_q_stoch", "delta_q_true",
                        "stationarity", "phi_before", "phi_after", "beta", "curvature",
                        "curvature_true"}) {
    cols.emplace_back(c);
  }
  return cols;
}

void write_trace_csv(std::ostream& out, const std::vector<IterationRecord>& trace, int n, int m) {
  RowWriter w(out);
  for (const auto& col : trace_columns(n, m)) w.put(col);
  w.end();
  for (const auto& r : trace) {
    w.put(kTraceSchemaVersion);
    w.put(r.k);
    w.put(r.x, n);
    w.put(r.g, n);
    w.put(r.d, n);
    w.put(r.y, m);
    w.put(r.tau_trial);
    w.put(r.tau);
    w.put(r.xi_trial);
    w.put(r.xi);
    w.put(r.alpha_hat_init);
    w.put(r.alpha_tilde_init);
    w.put(r.alpha_hat);
    w.put(r.alpha_tilde);
    w.put(r.alpha);
    w.put(r.f);
    w.put(r.c_norm1);
    w.put(r.tau_decreased);
    w.put(r.xi_decreased);
    w.put(r.d_true, n);
    w.put(r.y_true, m);
    w.put(r.tau_trial_true);
    w.put(r.tau_hat);
    w.put(r.delta_q_stoch);
    w.put(r.delta_q_true);
    w.put(r.stationarity);
    w.put(r.phi_before);
    w.put(r.phi_after);
    w.put(r.beta);
    w.put(r.curvature);
    w.put(r.curvature_true);
    w.end();
  }
}

std::vector<IterationRecord> read_trace_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::kIoError, "empty trace file");
  const std::vector<std::string> header = split(line);
  int n = 0;
  int m = 0;
  for (const auto& h : header) {
    if (h.rfind("x[", 0) == 0) ++n;
    if (h.rfind("y[", 0) == 0) ++m;
  }
  if (header != trace_columns(n, m)) throw Error(ErrorCode::kIoError, "unexpected trace header");

  std::vector<IterationRecord> trace;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const std::vector<std::string> cells = split(line);
    RowReader r(cells, line_no);
    if (r.integer() != kTraceSchemaVersion) r.fail("unsupported schema_version");
    IterationRecord rec;
    rec.k = r.integer();
    rec.x = r.vec(n);
    rec.g = r.vec(n);
    rec.d = r.vec(n);
    rec.y = r.vec(m);
    rec.tau_trial = r.extended();
    rec.tau = r.real();
    rec.xi_trial = r.extended();
    rec.xi = r.real();
    rec.alpha_hat_init = r.real();
    rec.alpha_tilde_init = r.real();
    rec.alpha_hat = r.real();
    rec.alpha_tilde = r.real();
    rec.alpha = r.real();
    rec.f = r.real();
    rec.c_norm1 = r.real();
    rec.tau_decreased = r.flag();
    rec.xi_decreased = r.flag();
    rec.d_true = r.vec(n);
    rec.y_true = r.vec(m);
    rec.tau_trial_true = r.extended();
    rec.tau_hat = r.real();
    rec.delta_q_stoch = r.real();
    rec.delta_q_true = r.real();
    rec.stationarity = r.real();
    rec.phi_before = r.real();
    rec.phi_after = r.real();
    rec.beta = r.real();
    rec.curvature = r.real();
    rec.curvature_true = r.real();
    r.finish();
    trace.push_back(std::move(rec));
  }
  return trace;
}

void write_file_atomic(const std::string& path, const std::string& contents) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::kIoError, "cannot open " + tmp.string());
    out << contents;
    out.flush();
    if (!out) throw Error(ErrorCode::kIoError, "write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) throw Error(ErrorCode::kIoError, "rename to " + path + " failed: " + ec.message());
}

}  // namespace ssqp
