// Copyright 2026 The unlearn-lab Authors
// SPDX-License-Identifier: Apache-2.0

#include "unlearn_lab/theory.hpp"


#include "unlearn_lab/errors.hpp"

namespace unlearn_lab {

std::string_view to_string(TheoremTag tag) {
  switch (tag) {
    case TheoremTag::kT1:
      return "T1";
    case TheoremTag::kT2:
      return "T2";
    case TheoremTag::kT3Distinct:
      return "T3-distinct";
    case TheoremTag::kT3A:
      return "T3-A";
    case TheoremTag::kT3B:
      return "T3-B";
  }
  return "?";
}

Provenance provenance_of(const SyntheticScenario& s, std::optional<Index> n_t) {
  return {s.seed, s.layout, n_t};
}

namespace {

double forget_seminorm(const SyntheticScenario& s, const Vector& v) {
  return weighted_seminorm_sq(v, s.x_forget, s.n_forget());
}

}  // namespace

TheoremPrediction predict_thm1(const SyntheticScenario& s) {
  if (!s.layout.is_distinct()) {
    throw LayoutMismatch("predict_thm1 requires d_lap = 0");
  }
  const WStarDecomposition parts = decompose_w_star(s);
  TheoremPrediction p;
  p.tag = TheoremTag::kT1;
  p.ul_gold = forget_seminorm(s, parts.forgetting);
  p.provenance = provenance_of(s);
  return p;
}

TheoremPrediction predict_thm2(const SyntheticScenario& s) {
  const WStarDecomposition parts = decompose_w_star(s);
  const Projector p_r = projector(s.x_remain);
  TheoremPrediction p;
  p.tag = TheoremTag::kT2;
  p.ul_gold = forget_seminorm(s, p_r.apply(parts.remaining + parts.overlap) -
                                     (parts.forgetting + parts.overlap));
  p.provenance = provenance_of(s);
  return p;
}

double golden_ul_block_expansion(const SyntheticScenario& s) {
  const FeatureLayout& l = s.layout;
  const WStarDecomposition parts = decompose_w_star(s);
  const Matrix r = s.x_remain.topRows(l.remaining_only);
  const Matrix l1 = s.x_remain.middleRows(l.remaining_end(), l.overlap);
  const Matrix l2 = s.x_forget.middleRows(l.remaining_end(), l.overlap);

  const Matrix gram = r.transpose() * r + l1.transpose() * l1;
  // The Gram matrix squares the conditioning of X_r, so its numerically
  // zero eigenvalues sit near eps * ||G|| rather than exactly zero.
  const Vector gram_s = svd(gram).s;
  const double sigma_max = gram_s.size() > 0 ? gram_s(0) : 0.0;
  const Matrix gram_pinv = pseudoinverse(gram, 1e-10 * sigma_max);

  const Vector w_r = parts.remaining.head(l.remaining_only);
  const Vector w_lap = parts.overlap.segment(l.remaining_end(), l.overlap);
  const Vector predicted_on_forget =
      l2.transpose() * (l1 * (gram_pinv * (r.transpose() * w_r + l1.transpose() * w_lap)));
  const Vector target = s.x_forget.transpose() * (parts.forgetting + parts.overlap);
  return (predicted_on_forget - target).squaredNorm() /
         static_cast<double>(s.n_forget());
}

TheoremPrediction predict_thm3(const SyntheticScenario& s, EditOption opt,
                               Index n_t) {
  validate_edit_option(s.layout, opt);
  const WStarDecomposition parts = decompose_w_star(s);
  TheoremPrediction p = predict_thm2(s);
  p.provenance = provenance_of(s, n_t);

  switch (opt) {
    case EditOption::kDistinctZeroForget:
      p.tag = TheoremTag::kT3Distinct;
      p.rl_edit = 0.0;
      p.ul_edit = forget_seminorm(s, parts.forgetting);
      break;
    case EditOption::kOverlapRetain: {
      p.tag = TheoremTag::kT3A;
      const Projector full = projector(s.x_full());
      p.rl_edit = 0.0;
      p.ul_edit = forget_seminorm(s, full.apply(parts.remaining + parts.overlap) -
                                         (parts.forgetting + parts.overlap));
      break;
    }
    case EditOption::kOverlapDiscard: {
      p.tag = TheoremTag::kT3B;
      const Projector full = projector(s.x_full());
      const Projector p_t = projector(fine_tune_subset(s, n_t).x);
      p.rl_edit = weighted_seminorm_sq(p_t.complement() * parts.overlap,
                                       s.x_remain, s.n_remain());
      p.ul_edit = forget_seminorm(s, full.apply(parts.remaining) +
                                         p_t.apply(parts.overlap) -
                                         (parts.forgetting + parts.overlap));
      break;
    }
  }
  return p;
}

}  // namespace unlearn_lab
