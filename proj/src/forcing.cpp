#include "gwave/forcing.hpp"

#include <cmath>

namespace gwave {

ForcingKind forcing_kind_from_name(const std::string& name) {
  if (name == "zero") return ForcingKind::zero;
  if (name == "constant") return ForcingKind::constant;
  if (name == "sinusoid") return ForcingKind::sinusoid;
  if (name == "sqrt_time") return ForcingKind::sqrt_time;
  if (name == "custom") return ForcingKind::custom;
  fail(errc::unknown_forcing_kind, "unknown forcing kind '" + name + "'");
}

const char* forcing_kind_name(ForcingKind kind) {
  switch (kind) {
    case ForcingKind::zero: return "zero";
    case ForcingKind::constant: return "constant";
    case ForcingKind::sinusoid: return "sinusoid";
    case ForcingKind::sqrt_time: return "sqrt_time";
    case ForcingKind::custom: return "custom";
  }
  return "unknown";
}

ForcingSpec ForcingSpec::zero() { return {}; }

ForcingSpec ForcingSpec::constant(VertexField amplitude) {
  ForcingSpec f;
  f.kind_ = ForcingKind::constant;
  f.amplitude_ = std::move(amplitude);
  return f;
}

ForcingSpec ForcingSpec::sinusoid(VertexField amplitude, double angular_frequency) {
  ForcingSpec f;
  f.kind_ = ForcingKind::sinusoid;
  f.amplitude_ = std::move(amplitude);
  f.angular_frequency_ = angular_frequency;
  return f;
}

ForcingSpec ForcingSpec::sqrt_time(VertexField amplitude) {
  ForcingSpec f;
  f.kind_ = ForcingKind::sqrt_time;
  f.amplitude_ = std::move(amplitude);
  return f;
}

ForcingSpec ForcingSpec::custom(std::function<VertexField(double)> sampler) {
  ForcingSpec f;
  f.kind_ = ForcingKind::custom;
  f.sampler_ = std::move(sampler);
  return f;
}

VertexField ForcingSpec::evaluate(double t, const WeightedGraph& g) const {
  switch (kind_) {
    case ForcingKind::zero: return g.zero_field();
    case ForcingKind::constant: return amplitude_;
    case ForcingKind::sinusoid: return amplitude_ * std::cos(angular_frequency_ * t);
    case ForcingKind::sqrt_time: return amplitude_ * std::sqrt(std::max(t, 0.0));
    case ForcingKind::custom: return sampler_(t);
  }
  return g.zero_field();
}

double ForcingSpec::holder_constant(const WeightedGraph& g,
                                    const DomainDecomposition& dom) const {
  switch (kind_) {
    case ForcingKind::zero:
    case ForcingKind::constant: return 0.0;
    case ForcingKind::sinusoid:
      return std::abs(angular_frequency_) * lp_norm(g, amplitude_, 2.0, dom.interior);
    case ForcingKind::sqrt_time: return lp_norm(g, amplitude_, 2.0, dom.interior);
    case ForcingKind::custom:
      fail(errc::unknown_forcing_kind, "custom forcing carries no analytic Hoelder data");
  }
  return 0.0;
}

double ForcingSpec::holder_exponent() const {
  return kind_ == ForcingKind::sqrt_time ? 0.5 : 1.0;
}

void ForcingSpec::validate(const WeightedGraph& g, const DomainDecomposition& dom) const {
  if (kind_ == ForcingKind::zero) return;
  if (kind_ == ForcingKind::custom) {
    if (!sampler_) fail(errc::unknown_forcing_kind, "custom forcing has no sampler");
    return;
  }
  require_dirichlet(g, dom, amplitude_, "forcing amplitude");
}

}  // namespace gwave
