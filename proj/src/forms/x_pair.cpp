#include "stabpair/forms/x_pair.hpp"

#include "stabpair/core/group.hpp"

namespace stabpair {

void XPair::require_delta() const {
  if (!has_delta()) throw PreconditionError("pair has no hyperdiscriminant; only resultant operations apply");
}

namespace {

void attach_samples(XPair& xp, const SamplingOptions& opts) {
  xp.sampling = opts;
  xp.r_samples = std::make_shared<SampleSet>((xp.n + 1) * (xp.ambient + 1), opts.samples, derive_seed(opts.seed, 1));
  xp.mahler_r = lp_norm(*xp.r_eval, 0.0, *xp.r_samples, nullptr, opts.threads);
  if (xp.delta_eval) {
    xp.delta_samples = std::make_shared<SampleSet>(xp.n * (xp.ambient + 1), opts.samples, derive_seed(opts.seed, 2));
    xp.mahler_delta = lp_norm(*xp.delta_eval, 0.0, *xp.delta_samples, nullptr, opts.threads);
  }
}

}  // namespace

XPair build_x_pair(const RationalCurve& c, const SamplingOptions& opts) {
  if (c.degree() < 2) throw PreconditionError("variety pair needs a curve of degree >= 2");
  XPair xp;
  xp.n = 1;
  xp.ambient = c.ambient();
  xp.degree = c.degree();
  xp.deg_r = 2 * c.degree();
  xp.deg_delta = 2 * c.degree() - 2;
  const int cols = c.ambient() + 1;
  GaussianRational r_scale(1);
  GaussianRational delta_scale = GaussianRational(1) / GaussianRational(discriminant_divisor(c.degree()));
  if (c.within_symbolic_cap()) {
    auto r = normalize_form(chow_form_curve(c));
    auto delta = normalize_form(hurwitz_form_curve(c));
    xp.r_form = r.form;
    xp.delta_form = delta.form;
    r_scale = r.factor;
    delta_scale *= delta.factor;
  } else {
    xp.note = "beyond the symbolic cap: evaluation-only forms with raw resultant scaling";
  }
  xp.r_eval = std::make_shared<DeterminantalEvaluator>(2, cols, chow_pencil(c), r_scale.to_complex());
  xp.delta_eval = std::make_shared<DeterminantalEvaluator>(1, cols, hurwitz_pencil(c), delta_scale.to_complex());
  attach_samples(xp, opts);
  return xp;
}

XPair build_x_pair(const HypersurfaceVariety& h, const SamplingOptions& opts) {
  XPair xp;
  xp.n = h.n;
  xp.ambient = h.n + 1;
  xp.degree = h.F.degree();
  xp.deg_r = h.F.degree() * (h.n + 1);
  xp.hypersurface = true;
  xp.r_form = normalize_form(chow_form_hypersurface(h)).form;
  xp.r_eval = std::make_shared<PolynomialEvaluator>(to_float(*xp.r_form));
  xp.note = "hypersurface: hyperdiscriminant unavailable, resultant-only operations";
  attach_samples(xp, opts);
  return xp;
}

}  // namespace stabpair
