#include "cascademd/potential.h"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace cascademd {

SplineEval EamPotential::density(double r) const {
  if (r < dens.x0) {
    guards.r_underflow.fetch_add(1, std::memory_order_relaxed);
    r = dens.x0;
  }
  return spline_eval(dens, r);
}

SplineEval EamPotential::pair(double r) const {
  if (r <= 0.0) {
    throw std::domain_error("EamPotential::pair: r <= 0");
  }
  if (r < zr.x0) {
    guards.r_underflow.fetch_add(1, std::memory_order_relaxed);
    r = zr.x0;
  } else if (r > cutoff) {
    r = cutoff;
  }
  const SplineEval z = spline_eval(zr, r);
  return {z.value / r, (z.deriv * r - z.value) / (r * r)};
}

SplineEval EamPotential::embedding(double rho_bar) const {
  if (rho_bar < embed.x0 || rho_bar > embed.x_last()) {
    guards.rho_clamp.fetch_add(1, std::memory_order_relaxed);
  }
  return spline_eval(embed, rho_bar);
}

namespace {

// whitespace tokenizer that remembers the source line of every token
class TableReader {
 public:
  explicit TableReader(const std::string& path) : path_(path), in_(path) {
    if (!in_) {
      throw std::runtime_error("cannot open potential file '" + path + "'");
    }
  }

  // whole next line, verbatim
  std::string read_line() {
    std::string line;
    if (!std::getline(in_, line)) {
      fail("unexpected end of file");
    }
    ++line_no_;
    return line;
  }

  bool next_token(std::string& tok) {
    while (pos_ >= tokens_.size()) {
      std::string line;
      if (!std::getline(in_, line)) return false;
      ++line_no_;
      tokens_.clear();
      pos_ = 0;
      std::istringstream ss(line);
      std::string t;
      while (ss >> t) tokens_.push_back(t);
    }
    tok = tokens_[pos_++];
    return true;
  }

  double need_double(const char* what) {
    std::string tok;
    if (!next_token(tok)) fail(std::string("missing ") + what);
    try {
      std::size_t used = 0;
      const double v = std::stod(tok, &used);
      if (used != tok.size() || !std::isfinite(v)) throw std::invalid_argument(tok);
      return v;
    } catch (const std::exception&) {
      fail(std::string("bad value for ") + what + ": '" + tok + "'");
    }
  }

  long need_count(const char* what) {
    const double v = need_double(what);
    if (v < 1.0 || v != std::floor(v)) {
      fail(std::string(what) + " must be a positive integer");
    }
    return static_cast<long>(v);
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw std::runtime_error(path_ + ":" + std::to_string(line_no_) + ": " + msg);
  }

  int line() const { return line_no_; }

 private:
  std::string path_;
  std::ifstream in_;
  int line_no_ = 0;
  std::vector<std::string> tokens_;
  std::size_t pos_ = 0;
};

std::vector<double> read_block(TableReader& r, long n, const char* what) {
  std::vector<double> v;
  v.reserve(static_cast<std::size_t>(n));
  for (long i = 0; i < n; ++i) {
    std::string tok;
    if (!r.next_token(tok)) {
      r.fail(std::string("table ") + what + " ends early: expected " +
             std::to_string(n) + " values, found " + std::to_string(i));
    }
    try {
      std::size_t used = 0;
      const double x = std::stod(tok, &used);
      if (used != tok.size() || !std::isfinite(x)) throw std::invalid_argument(tok);
      v.push_back(x);
    } catch (const std::exception&) {
      r.fail(std::string("non-numeric entry in ") + what + " table: '" + tok + "'");
    }
  }
  return v;
}

}  // namespace

EamPotential parse_potential_file(const std::string& path) {
  TableReader r(path);

  EamPotential pot;
  pot.comment = r.read_line();

  {
    std::string line2 = r.read_line();
    std::istringstream ss(line2);
    double z = 0.0;
    if (!(ss >> z >> pot.mass)) {
      r.fail("element line needs: atomic-number mass lattice-constant name");
    }
    if (!(ss >> pot.lattice_const >> pot.lattice_name)) {
      r.fail("element line needs: atomic-number mass lattice-constant name");
    }
    if (z < 1.0 || z != std::floor(z)) r.fail("atomic number must be a positive integer");
    pot.atomic_number = static_cast<int>(z);
    if (!(pot.mass > 0.0)) r.fail("mass must be positive");
    if (!(pot.lattice_const > 0.0)) r.fail("lattice constant must be positive");
  }

  long nrho = 0, nr = 0;
  double drho = 0.0, dr = 0.0;
  {
    std::string line3 = r.read_line();
    std::istringstream ss(line3);
    if (!(ss >> nrho >> drho >> nr >> dr >> pot.cutoff)) {
      r.fail("grid line needs: Nrho drho Nr dr cutoff");
    }
    if (nrho < 4 || nr < 4) r.fail("node counts must be at least 4 (cubic spline)");
    if (!(drho > 0.0) || !(dr > 0.0)) r.fail("grid spacings must be positive");
    if (!(pot.cutoff > 0.0)) r.fail("cutoff must be positive");
    if (std::abs(static_cast<double>(nr) * dr - pot.cutoff) > 1e-9) {
      r.fail("cutoff does not match the r-table extent Nr*dr");
    }
  }

  const std::vector<double> f_vals = read_block(r, nrho, "embedding");
  const std::vector<double> z_vals = read_block(r, nr, "pair z(r)");
  const std::vector<double> d_vals = read_block(r, nr, "density");

  std::string extra;
  if (r.next_token(extra)) {
    r.fail("trailing data after the tables: '" + extra + "'");
  }

  pot.embed = build_spline(0.0, drho, f_vals);
  pot.zr = build_spline(dr, dr, z_vals);
  pot.dens = build_spline(dr, dr, d_vals);
  return pot;
}

}  // namespace cascademd
