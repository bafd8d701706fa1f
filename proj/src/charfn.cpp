#include "msl/charfn.hpp"

namespace msl {

Matrix boundary_form(const SelfAdjointProblem& spec, const Matrix& Ypi, const Matrix& Yppi) {
  if (Ypi.rows() != spec.m || Ypi.cols() != spec.m || Yppi.rows() != spec.m ||
      Yppi.cols() != spec.m)
    throw ValidationError("boundary_form: inputs must be m x m");
  return spec.T * (Yppi - spec.H * Ypi) - spec.Tperp() * Ypi;
}

namespace detail {

namespace {

CharSample build_sample(const SelfAdjointProblem& spec, const PropagatorValue& pv, Complex rho) {
  CharSample cs;
  cs.rho = rho;
  cs.lambda = pv.lambda;
  cs.W = boundary_form(spec, pv.S, pv.Sp);
  cs.VC = boundary_form(spec, pv.C, pv.Cp);
  // row balancing degenerates as rho -> 0; the low-lambda machinery works with
  // the raw W there anyway
  Complex scale = std::abs(rho) >= 0.25 ? rho : Complex(1.0);
  Matrix balance = spec.T + scale * spec.Tperp();
  cs.Wbal = balance * cs.W;
  cs.VCbal = balance * cs.VC;
  cs.detW = Eigen::PartialPivLU<Matrix>(cs.W).determinant();
  cs.detBal = Eigen::PartialPivLU<Matrix>(cs.Wbal).determinant();
  Eigen::JacobiSVD<Matrix> svd(cs.Wbal);
  cs.sigmaMax = svd.singularValues()(0);
  cs.sigmaMin = svd.singularValues()(spec.m - 1);
  return cs;
}

}  // namespace

CharSample char_sample_rho(const SelfAdjointProblem& spec, Complex rho,
                           const IntegratorConfig& cfg) {
  return build_sample(spec, propagate(spec, rho * rho, cfg), rho);
}

CharSample char_sample_lambda(const SelfAdjointProblem& spec, Complex lambda,
                              const IntegratorConfig& cfg) {
  return build_sample(spec, propagate(spec, lambda, cfg), std::sqrt(lambda));
}

Matrix weyl_from_sample(const CharSample& cs) {
  if (!(cs.sigmaMin > 0) || cs.sigmaMax / cs.sigmaMin > kNearPoleCondition)
    throw NearPoleError("weyl: characteristic matrix condition " +
                        std::to_string(cs.sigmaMax / cs.sigmaMin) +
                        " exceeds the near-pole threshold (lambda too close to an eigenvalue)");
  // W M = -V(C), solved through the balanced pair for uniform row scales
  return Eigen::PartialPivLU<Matrix>(cs.Wbal).solve(-cs.VCbal);
}

}  // namespace detail

CharValue characteristic(const SelfAdjointProblem& spec, Complex lambda,
                         const IntegratorConfig& cfg) {
  detail::CharSample cs = detail::char_sample_lambda(spec, lambda, cfg);
  CharValue cv;
  cv.lambda = lambda;
  cv.W = cs.W;
  cv.det = cs.detW;
  return cv;
}

CharValue weyl(const SelfAdjointProblem& spec, Complex lambda, const IntegratorConfig& cfg) {
  detail::CharSample cs = detail::char_sample_lambda(spec, lambda, cfg);
  CharValue cv;
  cv.lambda = lambda;
  cv.W = cs.W;
  cv.det = cs.detW;
  cv.M = detail::weyl_from_sample(cs);
  return cv;
}

}  // namespace msl
