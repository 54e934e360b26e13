#include "spinrelay/full_oracle.hpp"

#include <string>
#include <vector>

#include "spinrelay/errors.hpp"

namespace spinrelay {
namespace {

void check_full(const Operator& op, int n_total) {
  const Eigen::Index full = Eigen::Index{1} << n_total;
  if (op.rows() != full || op.cols() != full) {
    throw DimensionError("full-space operator must be 2^N x 2^N");
  }
}

struct Bond {
  int low_bit;
  double coupling;
};

std::vector<Bond> bonds(const ChainConfig& config) {
  std::vector<Bond> out;
  const int n = config.n_total();
  for (int k = 1; k < n; ++k) {
    const bool boundary = (k == 1 || k == n - 1);
    out.push_back({k - 1, boundary ? config.j_boundary() : config.j_channel()});
  }
  return out;
}

// sigma^+_k sigma^-_{k+1} + h.c. flips an anti-aligned pair of neighbouring bits.
inline bool hops(std::uint32_t x, int low_bit) {
  return ((x >> low_bit) & 1U) != ((x >> (low_bit + 1)) & 1U);
}
inline std::uint32_t hop(std::uint32_t x, int low_bit) { return x ^ (3U << low_bit); }

}  // namespace

std::uint32_t full_index(int sector_label) noexcept {
  return sector_label == basis::vacuum ? 0U : (1U << (sector_label - 1));
}

Operator embed_in_full(const Operator& sector_op, int n_total) {
  const int d = n_total + 1;
  if (sector_op.rows() != d || sector_op.cols() != d) throw DimensionError("sector operator must be (N+1)x(N+1)");
  const Eigen::Index full = Eigen::Index{1} << n_total;
  Operator out = Operator::Zero(full, full);
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) out(full_index(a), full_index(b)) = sector_op(a, b);
  }
  return out;
}

Operator project_to_sector(const Operator& full_op, int n_total) {
  check_full(full_op, n_total);
  const int d = n_total + 1;
  Operator out(d, d);
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) out(a, b) = full_op(full_index(a), full_index(b));
  }
  return out;
}

double out_of_sector_weight(const Operator& full_op, int n_total) {
  check_full(full_op, n_total);
  auto in_sector = [](Eigen::Index x) { return (x & (x - 1)) == 0; };  // zero or one bit set
  double worst = 0.0;
  for (Eigen::Index b = 0; b < full_op.cols(); ++b) {
    for (Eigen::Index a = 0; a < full_op.rows(); ++a) {
      if (in_sector(a) && in_sector(b)) continue;
      worst = std::max(worst, std::abs(full_op(a, b)));
    }
  }
  return worst;
}

Eigen::Matrix2cd full_partial_trace_receiver(const Operator& full_op, int n_total) {
  check_full(full_op, n_total);
  const std::uint32_t receiver = 1U << (n_total - 1);
  Eigen::Matrix2cd out = Eigen::Matrix2cd::Zero();
  for (std::uint32_t rest = 0; rest < receiver; ++rest) {
    for (int s = 0; s < 2; ++s) {
      for (int sp = 0; sp < 2; ++sp) {
        out(s, sp) += full_op(rest | (s ? receiver : 0U), rest | (sp ? receiver : 0U));
      }
    }
  }
  return out;
}

Operator full_lindblad_rhs(const ChainConfig& config, const Operator& rho, int sz_sign) {
  const int n = config.n_total();
  check_full(rho, n);
  const Eigen::Index full = rho.rows();
  const Complex i_unit(0.0, 1.0);

  Operator h_rho = Operator::Zero(full, full);
  Operator rho_h = Operator::Zero(full, full);
  for (const Bond& bond : bonds(config)) {
    for (Eigen::Index x = 0; x < full; ++x) {
      const auto ux = static_cast<std::uint32_t>(x);
      if (!hops(ux, bond.low_bit)) continue;
      const Eigen::Index y = hop(ux, bond.low_bit);
      h_rho.row(x) += bond.coupling * rho.row(y);
      rho_h.col(x) += bond.coupling * rho.col(y);
    }
  }
  Operator out = -i_unit * (h_rho - rho_h);

  if (config.gamma() > 0.0) {
    auto z = [sz_sign](Eigen::Index x, int site) {
      return ((x >> (site - 1)) & 1) ? sz_sign : -sz_sign;
    };
    for (Eigen::Index b = 0; b < full; ++b) {
      for (Eigen::Index a = 0; a < full; ++a) {
        double coeff = 0.0;
        for (int k : config.dephasing_sites()) coeff += z(a, k) * z(b, k) - 1;
        out(a, b) += config.gamma() * coeff * rho(a, b);
      }
    }
  }
  return out;
}

Operator oracle_evolve_full(const ChainConfig& config, const Operator& rho_full, double duration,
                            const OracleOptions& options) {
  if (config.n_total() > kOracleMaxSites) {
    throw ConfigError("full-space oracle is limited to N <= " + std::to_string(kOracleMaxSites));
  }
  if (options.sz_sign != 1 && options.sz_sign != -1) throw ConfigError("sz_sign must be +1 or -1");
  check_full(rho_full, config.n_total());
  auto rhs = [&](const Operator& r) -> Operator { return full_lindblad_rhs(config, r, options.sz_sign); };
  return integrate_dopri5(rhs, rho_full, duration, options.control);
}

}  // namespace spinrelay
