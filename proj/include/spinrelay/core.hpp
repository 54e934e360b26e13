#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace spinrelay {

using Complex = std::complex<double>;
using Operator = Eigen::MatrixXcd;

/// Serial reference loop or OpenMP fan-out. Results are bit-identical either way.
enum class Execution { serial, parallel };

/// Which sites the dephasing acts on when the set is built from a length alone.
/// `channel` is every channel qubit {2, ..., N-1}; `inner` stops at N-2.
enum class DephasingSpan { channel, inner };

/// Physical scenario: a uniform channel of N-2 spins with sender (site 1) and
/// receiver (site N) attached through the weak coupling J'. Energies and rates
/// are in units of the channel coupling J; time in units of 1/J.
class ChainConfig {
 public:
  ChainConfig(int n_total, double j_channel, double j_boundary, double gamma,
              std::vector<int> dephasing_sites);

  /// J = 1 and the dephasing set derived from `span`.
  static ChainConfig uniform(int n_total, double j_boundary, double gamma,
                             DephasingSpan span = DephasingSpan::channel);

  int n_total() const noexcept { return n_total_; }
  /// Sector dimension N + 1 (vacuum plus one excitation per site).
  int dim() const noexcept { return n_total_ + 1; }
  double j_channel() const noexcept { return j_channel_; }
  double j_boundary() const noexcept { return j_boundary_; }
  double gamma() const noexcept { return gamma_; }
  const std::vector<int>& dephasing_sites() const noexcept { return dephasing_sites_; }
  bool is_dephased(int site) const noexcept;

  ChainConfig with_gamma(double gamma) const;

 private:
  int n_total_;
  double j_channel_;
  double j_boundary_;
  double gamma_;
  std::vector<int> dephasing_sites_;
  std::vector<char> dephased_mask_;
};

/// Sector basis ordering [vac, 1, ..., N]: index 0 is the all-down state,
/// index m the single excitation on site m.
namespace basis {
inline constexpr int vacuum = 0;
inline constexpr int site(int m) noexcept { return m; }
}  // namespace basis

/// Sender qubit state cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>.
struct SenderState {
  double theta = 0.0;
  double phi = 0.0;

  Eigen::Vector2cd ket() const;
};

/// Deviations of a matrix from the density-matrix conditions.
struct StateDeviation {
  double hermiticity = 0.0;     // max |rho - rho^dagger| element
  double trace = 0.0;           // |tr rho - 1|
  double min_eigenvalue = 0.0;  // of the Hermitian part

  void merge(const StateDeviation& other);
  bool acceptable() const noexcept;
};

inline constexpr double kHermiticityTol = 1e-10;
inline constexpr double kTraceTol = 1e-9;
inline constexpr double kPsdTol = 1e-9;

StateDeviation measure_state(const Operator& rho);

/// Validated (N+1)x(N+1) density matrix over the sector basis. Construction
/// throws InvalidStateError instead of repairing a bad matrix.
class DensityMatrix {
 public:
  explicit DensityMatrix(Operator entries);

  int dim() const noexcept { return static_cast<int>(entries_.rows()); }
  const Operator& matrix() const noexcept { return entries_; }
  Complex operator()(int row, int col) const { return entries_(row, col); }

 private:
  Operator entries_;
};

DensityMatrix initial_state(const ChainConfig& config, const SenderState& sender);

/// Receiver qubit state in the {|0>, |1>} basis.
Eigen::Matrix2cd receiver_reduced_state(const DensityMatrix& rho, const ChainConfig& config);

/// Same reduction for an arbitrary sector operator (not necessarily a state).
Eigen::Matrix2cd receiver_block(const Operator& op);

}  // namespace spinrelay
