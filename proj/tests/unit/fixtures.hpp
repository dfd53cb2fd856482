#pragma once

#include <random>
#include <vector>

#include "credint/catalog.hpp"

namespace fixture {

inline std::vector<credint::PivotDistribution> catalog() {
  using namespace credint::catalog;
  return {standard_normal(), normal(2.5),      student_t(1.0),   student_t(5.0),     student_t(30.0),
          logistic(),        laplace(),        exponential(),    shifted_exponential(), log_gamma(1.0),
          log_gamma(2.0),    log_gamma(0.5),   log_weibull(1.5), log_gamma_ratio(2.0, 1.0),
          log_gamma_ratio(3.0, 3.0)};
}

inline std::vector<credint::PivotDistribution> symmetric_unimodal() {
  using namespace credint::catalog;
  return {standard_normal(), student_t(1.0), student_t(5.0), student_t(30.0), logistic(), laplace()};
}

}  // namespace fixture
