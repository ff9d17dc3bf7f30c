#include "roa/cobyla.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

namespace roa {

namespace {

using Vec = std::vector<double>;
using Mat = std::vector<Vec>;

double dot(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

double length(const Vec& a) { return std::sqrt(dot(a, a)); }

// Solves rows * g = rhs by Gaussian elimination with partial pivoting.
// Returns nullopt when a pivot falls below tol.
std::optional<Vec> solve(Mat rows, Vec rhs, double tol) {
  const std::size_t n = rows.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t pivot = c;
    for (std::size_t r = c + 1; r < n; ++r) {
      if (std::abs(rows[r][c]) > std::abs(rows[pivot][c])) pivot = r;
    }
    if (std::abs(rows[pivot][c]) < tol) return std::nullopt;
    std::swap(rows[c], rows[pivot]);
    std::swap(rhs[c], rhs[pivot]);
    for (std::size_t r = c + 1; r < n; ++r) {
      const double factor = rows[r][c] / rows[c][c];
      for (std::size_t k = c; k < n; ++k) rows[r][k] -= factor * rows[c][k];
      rhs[r] -= factor * rhs[c];
    }
  }
  Vec g(n);
  for (std::size_t c = n; c-- > 0;) {
    double s = rhs[c];
    for (std::size_t k = c + 1; k < n; ++k) s -= rows[c][k] * g[k];
    g[c] = s / rows[c][c];
  }
  return g;
}

double abs_det(Mat rows) {
  const std::size_t n = rows.size();
  double det = 1.0;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t pivot = c;
    for (std::size_t r = c + 1; r < n; ++r) {
      if (std::abs(rows[r][c]) > std::abs(rows[pivot][c])) pivot = r;
    }
    if (rows[pivot][c] == 0.0) return 0.0;
    std::swap(rows[c], rows[pivot]);
    det *= rows[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      const double factor = rows[r][c] / rows[c][c];
      for (std::size_t k = c; k < n; ++k) rows[r][k] -= factor * rows[c][k];
    }
  }
  return std::abs(det);
}

class Cobyla {
 public:
  Cobyla(const Objective& f, Vec x0, const CobylaOptions& opt)
      : f_(f), opt_(opt), n_(x0.size()), rho_(opt.rho_begin) {
    result_.x = x0;
    result_.value = std::numeric_limits<double>::infinity();
    start_ = std::move(x0);
  }

  CobylaResult run() {
    if (!evaluate(start_)) return result_;
    vertices_.push_back(start_);
    values_.push_back(result_.history.back());
    for (std::size_t k = 0; k < n_; ++k) {
      Vec v = start_;
      v[k] += rho_;
      if (!evaluate(v)) return result_;
      vertices_.push_back(v);
      values_.push_back(result_.history.back());
    }
    if (n_ == 0) return result_;

    while (result_.evaluations < opt_.max_evals && rho_ >= opt_.rho_end) {
      const std::size_t b = best_vertex();
      const std::size_t far = farthest_from(b);
      if (distance(far, b) > 2.0 * rho_) {
        if (!improve_geometry(b, far)) break;
        continue;
      }
      Mat edges;
      Vec diffs;
      std::vector<std::size_t> ids;
      for (std::size_t i = 0; i < vertices_.size(); ++i) {
        if (i == b) continue;
        edges.push_back(edge(i, b));
        diffs.push_back(values_[i] - values_[b]);
        ids.push_back(i);
      }
      const auto g = solve(edges, diffs, 1e-10 * rho_);
      if (!g) {
        if (!improve_geometry(b, flattest(b))) break;
        continue;
      }
      gradient_ = *g;
      const double gnorm = length(*g);
      if (gnorm == 0.0) {
        rho_ *= 0.5;
        continue;
      }
      Vec trial = vertices_[b];
      for (std::size_t k = 0; k < n_; ++k) trial[k] -= rho_ * (*g)[k] / gnorm;
      if (!evaluate(trial)) break;
      const double value = result_.history.back();
      const double predicted = rho_ * gnorm;
      const double actual = values_[b] - value;

      const std::size_t replace = best_replacement(b, trial);
      vertices_[replace] = trial;
      values_[replace] = value;
      if (actual < 0.1 * predicted) rho_ *= 0.5;
    }
    return result_;
  }

 private:
  bool evaluate(const Vec& x) {
    if (result_.evaluations >= opt_.max_evals) return false;
    const double v = f_(x);
    ++result_.evaluations;
    result_.history.push_back(v);
    if (v < result_.value) {
      result_.value = v;
      result_.x = x;
    }
    return true;
  }

  std::size_t best_vertex() const {
    return std::min_element(values_.begin(), values_.end()) - values_.begin();
  }

  Vec edge(std::size_t i, std::size_t b) const {
    Vec e(n_);
    for (std::size_t k = 0; k < n_; ++k) e[k] = vertices_[i][k] - vertices_[b][k];
    return e;
  }

  double distance(std::size_t i, std::size_t b) const { return length(edge(i, b)); }

  std::size_t farthest_from(std::size_t b) const {
    std::size_t far = b == 0 ? 1 : 0;
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
      if (i != b && distance(i, b) > distance(far, b)) far = i;
    }
    return far;
  }

  // Component of edge(j, b) orthogonal to the other edges.
  Vec orthogonal_part(Vec v, std::size_t b, std::size_t j) const {
    Mat basis;
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
      if (i == b || i == j) continue;
      Vec e = edge(i, b);
      for (const Vec& u : basis) {
        const double p = dot(e, u);
        for (std::size_t k = 0; k < n_; ++k) e[k] -= p * u[k];
      }
      const double len = length(e);
      if (len > 1e-12) {
        for (double& c : e) c /= len;
        basis.push_back(std::move(e));
      }
    }
    for (const Vec& u : basis) {
      const double p = dot(v, u);
      for (std::size_t k = 0; k < n_; ++k) v[k] -= p * u[k];
    }
    return v;
  }

  std::size_t flattest(std::size_t b) const {
    std::size_t worst = b == 0 ? 1 : 0;
    double worst_len = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
      if (i == b) continue;
      const double len = length(orthogonal_part(edge(i, b), b, i));
      if (len < worst_len) {
        worst_len = len;
        worst = i;
      }
    }
    return worst;
  }

  // Moves vertex j to distance rho from the best vertex along a direction
  // orthogonal to the remaining edges, on the downhill side of the last
  // linear model.
  bool improve_geometry(std::size_t b, std::size_t j) {
    Vec dir = orthogonal_part(edge(j, b), b, j);
    if (length(dir) < 1e-12 * rho_) {
      double best_len = -1.0;
      for (std::size_t k = 0; k < n_; ++k) {
        Vec axis(n_, 0.0);
        axis[k] = 1.0;
        Vec cand = orthogonal_part(axis, b, j);
        const double len = length(cand);
        if (len > best_len) {
          best_len = len;
          dir = std::move(cand);
        }
      }
    }
    const double len = length(dir);
    if (len == 0.0) return false;
    if (!gradient_.empty() && dot(dir, gradient_) > 0.0) {
      for (double& c : dir) c = -c;
    }
    Vec point = vertices_[b];
    for (std::size_t k = 0; k < n_; ++k) point[k] += rho_ * dir[k] / len;
    if (!evaluate(point)) return false;
    vertices_[j] = std::move(point);
    values_[j] = result_.history.back();
    return true;
  }

  // Vertex (never the current best) whose replacement by trial leaves the
  // largest simplex volume.
  std::size_t best_replacement(std::size_t b, const Vec& trial) const {
    std::size_t choice = b == 0 ? 1 : 0;
    double best_volume = -1.0;
    for (std::size_t j = 0; j < vertices_.size(); ++j) {
      if (j == b) continue;
      Mat rows;
      for (std::size_t i = 0; i < vertices_.size(); ++i) {
        if (i == b) continue;
        const Vec& p = i == j ? trial : vertices_[i];
        Vec e(n_);
        for (std::size_t k = 0; k < n_; ++k) e[k] = p[k] - vertices_[b][k];
        rows.push_back(std::move(e));
      }
      const double volume = abs_det(std::move(rows));
      if (volume > best_volume) {
        best_volume = volume;
        choice = j;
      }
    }
    return choice;
  }

  const Objective& f_;
  CobylaOptions opt_;
  std::size_t n_;
  double rho_;
  Vec start_;
  Mat vertices_;
  Vec values_;
  Vec gradient_;
  CobylaResult result_;
};

}  // namespace

CobylaResult minimize_cobyla(const Objective& f, std::vector<double> x0,
                             const CobylaOptions& options) {
  return Cobyla(f, std::move(x0), options).run();
}

}  // namespace roa
