#include "fqco/controllers.hpp"

#include <cmath>
#include <string>

#include "fqco/error.hpp"

namespace fqco {

std::string_view to_string(ControllerKind kind) {
  switch (kind) {
    case ControllerKind::kStandard: return "standard";
    case ControllerKind::kBangBang: return "bang-bang";
    case ControllerKind::kFiniteTime1: return "finite1";
    case ControllerKind::kFiniteTime2: return "finite2";
    case ControllerKind::kFixedTime: return "fixed";
    case ControllerKind::kLegacyFalqon: return "legacy";
  }
  return "unknown";
}

ControllerKind parse_controller_kind(std::string_view name) {
  for (auto kind : {ControllerKind::kStandard, ControllerKind::kBangBang,
                    ControllerKind::kFiniteTime1, ControllerKind::kFiniteTime2,
                    ControllerKind::kFixedTime, ControllerKind::kLegacyFalqon})
    if (to_string(kind) == name) return kind;
  throw InputError("unknown controller '" + std::string(name) +
                   "' (expected standard, bang-bang, finite1, finite2, fixed "
                   "or legacy)");
}

void ControllerSpec::validate() const {
  auto positive = [](double v, const char* what) {
    if (!(v > 0) || !std::isfinite(v))
      throw InputError(std::string(what) + " must be positive and finite");
  };
  positive(K, "K");
  if (kind == ControllerKind::kFixedTime) {
    positive(K1, "K1");
    positive(K2, "K2");
  }
  if (kind == ControllerKind::kFiniteTime1 ||
      kind == ControllerKind::kFiniteTime2 ||
      kind == ControllerKind::kFixedTime) {
    if (!(c1 > 0 && c1 < 1)) throw InputError("c1 must lie in (0, 1)");
  }
}

namespace {

double sign(double w) { return (w > 0) - (w < 0); }

double control_with_gain(const ControllerSpec& spec, double gain, double w) {
  if (!std::isfinite(w)) throw InputError("controller input is not finite");
  const double a = std::abs(w);
  switch (spec.kind) {
    case ControllerKind::kStandard:
      return -gain * w;
    case ControllerKind::kBangBang:
      return -gain * sign(w);
    case ControllerKind::kFiniteTime1:
      return -gain * w * std::pow(a, spec.c1);
    case ControllerKind::kFiniteTime2:
      return -gain * sign(w) * std::pow(a, spec.c1);
    case ControllerKind::kFixedTime:
      return -gain * sign(w) *
             (spec.K1 * std::pow(a, spec.c1) + spec.K2 * std::pow(a, spec.c2()));
    case ControllerKind::kLegacyFalqon:
      return -w;
  }
  return 0.0;
}

}  // namespace

double next_control(const ControllerSpec& spec, double w) {
  spec.validate();
  return control_with_gain(spec, spec.K, w);
}

std::vector<double> next_controls_multi(const ControllerSpec& spec,
                                        std::span<const double> w,
                                        std::span<const double> gains) {
  if (w.size() != gains.size())
    throw DimensionError("got " + std::to_string(w.size()) + " inputs and " +
                         std::to_string(gains.size()) + " gains");
  spec.validate();
  std::vector<double> out(w.size());
  for (std::size_t p = 0; p < w.size(); ++p) {
    if (!(gains[p] > 0)) throw InputError("controller gains must be positive");
    out[p] = control_with_gain(spec, gains[p], w[p]);
  }
  return out;
}

}  // namespace fqco
