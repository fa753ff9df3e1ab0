#pragma once

#include <span>
#include <string_view>
#include <vector>

namespace fqco {

enum class ControllerKind {
  kStandard,
  kBangBang,
  kFiniteTime1,
  kFiniteTime2,
  kFixedTime,
  kLegacyFalqon,
};

/// CLI spelling: standard, bang-bang, finite1, finite2, fixed, legacy.
std::string_view to_string(ControllerKind kind);
ControllerKind parse_controller_kind(std::string_view name);

/// Feedback law zeta_{k+1} = -K f(w), w = dt <i[H_m, L]>.
///
///   standard      -K w
///   bang_bang     -K sign(w)
///   finite_time_1 -K w |w|^c1
///   finite_time_2 -K sign(w) |w|^c1
///   fixed_time    -K (K1 sign(w) |w|^c1 + K2 sign(w) |w|^c2), c2 = 1/c1
///   legacy_falqon -w
///
/// sign(0) = 0, so every law maps 0 to 0 and zeta * w < 0 otherwise.
struct ControllerSpec {
  ControllerKind kind = ControllerKind::kStandard;
  double K = 1.0;
  double K1 = 1.0;
  double K2 = 1.0;
  double c1 = 0.9;

  double c2() const noexcept { return 1.0 / c1; }
  /// Throws InputError on non-positive gains or c1 outside (0, 1).
  void validate() const;
};

double next_control(const ControllerSpec& spec, double w);

/// Componentwise next_control with gain K replaced by gains[p].
std::vector<double> next_controls_multi(const ControllerSpec& spec,
                                        std::span<const double> w,
                                        std::span<const double> gains);

}  // namespace fqco
