#include "ucvrp/instance.hpp"

#include <algorithm>
#include <cmath>

#include "ucvrp/errors.hpp"
#include "ucvrp/kernels.hpp"
#include "ucvrp/random.hpp"

namespace ucvrp {

namespace {

constexpr double kMetricTolerance = 1e-9;

std::vector<double> euclidean_matrix(const std::vector<Point>& pts,
                                     bool round) {
  const std::size_t m = pts.size();
  std::vector<double> matrix(m * m, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (i == j) {
        continue;
      }
      double d = std::hypot(pts[i].x - pts[j].x, pts[i].y - pts[j].y);
      if (round) {
        d = std::floor(d + 0.5);
      }
      matrix[i * m + j] = d;
    }
  }
  return matrix;
}

std::vector<double> radial_weights(const Instance& inst) {
  std::vector<double> w(inst.n());
  for (int v = 1; v <= inst.n(); ++v) {
    w[v - 1] = 2.0 * inst.cost(kDepot, v);
  }
  return w;
}

} // namespace

CustomerSet Instance::customers() const {
  CustomerSet all(n());
  for (int v = 1; v <= n(); ++v) {
    all[v - 1] = v;
  }
  return all;
}

Instance validate_instance(RawInstance raw) {
  const auto n = raw.demands.size();
  const std::size_t m = n + 1;
  if (raw.capacity < 1) {
    throw MalformedInstance("capacity must be a positive integer");
  }
  if (raw.coords) {
    if (raw.coords->size() != m) {
      throw MalformedInstance("expected " + std::to_string(m) +
                              " coordinates (depot first), got " +
                              std::to_string(raw.coords->size()));
    }
    raw.matrix = euclidean_matrix(*raw.coords, raw.round_euclidean);
  }
  if (raw.matrix.size() != m * m) {
    throw MalformedInstance("cost matrix must be " + std::to_string(m) + "x" +
                            std::to_string(m));
  }
  for (std::size_t v = 0; v < n; ++v) {
    if (raw.demands[v] < 1 || raw.demands[v] > raw.capacity) {
      throw DemandOutOfRange(static_cast<int>(v + 1));
    }
  }
  const auto c = [&](std::size_t x, std::size_t y) {
    return raw.matrix[x * m + y];
  };
  for (std::size_t x = 0; x < m; ++x) {
    if (c(x, x) != 0.0) {
      throw MalformedInstance("c(" + std::to_string(x) + "," +
                              std::to_string(x) + ") must be 0");
    }
    for (std::size_t y = 0; y < m; ++y) {
      if (!std::isfinite(c(x, y)) || c(x, y) < 0.0) {
        throw MalformedInstance("costs must be finite and non-negative");
      }
      if (c(x, y) != c(y, x)) {
        throw AsymmetricCost(static_cast<int>(x), static_cast<int>(y));
      }
    }
  }
  for (std::size_t x = 0; x < m; ++x) {
    for (std::size_t z = 0; z < m; ++z) {
      for (std::size_t y = 0; y < m; ++y) {
        const double excess = c(x, y) - (c(x, z) + c(z, y));
        if (excess > kMetricTolerance) {
          throw TriangleViolation(static_cast<int>(x), static_cast<int>(y),
                                  static_cast<int>(z), excess);
        }
      }
    }
  }

  Instance inst;
  inst.name_ = std::move(raw.name);
  inst.capacity_ = static_cast<int>(raw.capacity);
  inst.demands_.assign(raw.demands.begin(), raw.demands.end());
  inst.matrix_ = std::move(raw.matrix);
  // Rounded distances are no longer recoverable from the points.
  if (!raw.round_euclidean) {
    inst.coords_ = std::move(raw.coords);
  }
  return inst;
}

double radial_lower_bound(const Instance& inst) {
  std::vector<double> dhat(inst.n());
  for (int v = 1; v <= inst.n(); ++v) {
    dhat[v - 1] = inst.norm_demand(v).to_double();
  }
  const auto w = radial_weights(inst);
  return kernels::active().dot(dhat, w);
}

double radial_mass(const Instance& inst, std::span<const int> subset) {
  double sum = 0.0;
  for (const int v : subset) {
    sum += 2.0 * inst.norm_demand(v).to_double() * inst.cost(kDepot, v);
  }
  return sum;
}

double f_integral(const Instance& inst, const Rational& l, const Rational& r,
                  int t) {
  if (t != 0 && t != 1) {
    throw std::invalid_argument("f_integral exponent must be 0 or 1");
  }
  if (l < Rational(0) || r > Rational(1) || r < l) {
    throw std::invalid_argument("f_integral needs 0 <= l <= r <= 1");
  }
  const int n = inst.n();
  std::vector<double> dhat(n);
  std::vector<double> selected(n, 0.0);
  for (int v = 1; v <= n; ++v) {
    const Rational d = inst.norm_demand(v);
    dhat[v - 1] = d.to_double();
    if (l < d && d <= r) {
      selected[v - 1] = t == 1 ? dhat[v - 1] : 1.0;
    }
  }
  const auto w = radial_weights(inst);
  const auto& k = kernels::active();
  const double denominator = k.dot(dhat, w);
  if (!(denominator > 0.0)) {
    throw ZeroRadialMass();
  }
  // With every customer selected and t = 1 both dot products see identical
  // inputs, so the full-range integral is exactly 1.
  return k.dot(selected, w) / denominator;
}

DemandClass classify(const Instance& inst, std::span<const int> subset,
                     const Rational& delta) {
  const Rational half(1, 2);
  DemandClass out;
  for (const int v : subset) {
    const Rational d = inst.norm_demand(v);
    if (d <= delta) {
      out.small.push_back(v);
    } else if (d <= half) {
      out.big.push_back(v);
    } else {
      out.large.push_back(v);
    }
  }
  return out;
}

DemandClass classify(const Instance& inst, const Rational& delta) {
  const auto all = inst.customers();
  return classify(inst, all, delta);
}

Instance gen_instance(MetricKind kind, int n, int k, DemandLaw law,
                      std::uint64_t seed) {
  if (n < 1 || k < 1) {
    throw std::invalid_argument("gen_instance needs n >= 1 and k >= 1");
  }
  SplitMix64 rng(seed);
  RawInstance raw;
  raw.name = std::string(kind == MetricKind::euclidean ? "euc" : "rnd") +
             "-n" + std::to_string(n) + "-k" + std::to_string(k) + "-s" +
             std::to_string(seed);
  raw.capacity = k;
  const auto m = static_cast<std::size_t>(n) + 1;

  if (kind == MetricKind::euclidean) {
    std::vector<Point> pts(m);
    for (auto& p : pts) {
      p.x = rng.uniform();
      p.y = rng.uniform();
    }
    raw.coords = std::move(pts);
  } else {
    std::vector<double> w(m * m, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = i + 1; j < m; ++j) {
        w[i * m + j] = w[j * m + i] = rng.uniform_open_closed();
      }
    }
    for (std::size_t z = 0; z < m; ++z) {
      for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
          w[i * m + j] = std::min(w[i * m + j], w[i * m + z] + w[z * m + j]);
        }
      }
    }
    raw.matrix = std::move(w);
  }

  raw.demands.resize(n);
  for (auto& d : raw.demands) {
    if (law == DemandLaw::uniform) {
      d = rng.uniform_int(1, k);
      continue;
    }
    // Mostly small demands, with a tail of mid-size and large ones.
    const double u = rng.uniform();
    if (u < 0.6) {
      d = rng.uniform_int(1, std::max(1, k / 5));
    } else if (u < 0.85) {
      d = rng.uniform_int(1, k);
    } else {
      d = rng.uniform_int(k / 2 + 1, k);
    }
  }
  return validate_instance(std::move(raw));
}

Instance line3() {
  RawInstance raw;
  raw.name = "LINE3";
  raw.capacity = 2;
  raw.demands = {1, 1, 1};
  raw.matrix.resize(16);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      raw.matrix[i * 4 + j] = std::abs(i - j);
    }
  }
  return validate_instance(std::move(raw));
}

} // namespace ucvrp
