#ifndef GWAVE_FORCING_HPP
#define GWAVE_FORCING_HPP

#include <functional>
#include <string>

#include "gwave/graph.hpp"

namespace gwave {

/// Closed family of forcing terms, each Hoelder continuous in time by
/// construction:
///   zero       f = 0                       (C = 0, gamma = 1)
///   constant   f(t,x) = a(x)               (C = 0, gamma = 1)
///   sinusoid   f(t,x) = a(x) cos(omega t)  (C = |omega| ||a||, gamma = 1)
///   sqrt_time  f(t,x) = a(x) sqrt(t)       (C = ||a||, gamma = 1/2)
/// `custom` carries an arbitrary sampler for programmatic use; its regularity
/// is whatever the caller supplies.
enum class ForcingKind { zero, constant, sinusoid, sqrt_time, custom };

ForcingKind forcing_kind_from_name(const std::string& name);
const char* forcing_kind_name(ForcingKind kind);

class ForcingSpec {
 public:
  ForcingSpec() = default;  // zero forcing

  static ForcingSpec zero();
  static ForcingSpec constant(VertexField amplitude);
  static ForcingSpec sinusoid(VertexField amplitude, double angular_frequency);
  static ForcingSpec sqrt_time(VertexField amplitude);
  static ForcingSpec custom(std::function<VertexField(double)> sampler);

  ForcingKind kind() const { return kind_; }
  bool is_zero() const { return kind_ == ForcingKind::zero; }
  const VertexField& amplitude() const { return amplitude_; }
  double angular_frequency() const { return angular_frequency_; }

  /// f(t, .) extended by zero off the interior. The amplitude must be a
  /// Dirichlet field for the domain in use; validate(...) checks this.
  VertexField evaluate(double t, const WeightedGraph& g) const;

  /// Analytic Hoelder data: ||f(s1,.) - f(s2,.)|| <= C |s1 - s2|^gamma.
  double holder_constant(const WeightedGraph& g, const DomainDecomposition& dom) const;
  double holder_exponent() const;

  void validate(const WeightedGraph& g, const DomainDecomposition& dom) const;

 private:
  ForcingKind kind_ = ForcingKind::zero;
  VertexField amplitude_;
  double angular_frequency_ = 0.0;
  std::function<VertexField(double)> sampler_;
};

}  // namespace gwave

#endif  // GWAVE_FORCING_HPP
