#ifndef ORLICZ_GAUSS_ORLICZ_GAUSS_HPP
#define ORLICZ_GAUSS_ORLICZ_GAUSS_HPP

// Orlicz-space machinery on the Gaussian space: Young functions, Luxemburg
// and dual norms, Hermite calculus, the Ornstein-Uhlenbeck semigroup, a
// verification suite for Poincare-type inequalities with explicit constants,
// and the information-geometry applications (Hyvarinen score matching, Otto
// metric / natural gradient).

#include "orlicz_gauss/core.hpp"
#include "orlicz_gauss/multi_index.hpp"
#include "orlicz_gauss/quadrature.hpp"
#include "orlicz_gauss/hermite.hpp"
#include "orlicz_gauss/builtin.hpp"
#include "orlicz_gauss/function.hpp"
#include "orlicz_gauss/gauss_space.hpp"
#include "orlicz_gauss/young.hpp"
#include "orlicz_gauss/orlicz_norms.hpp"
#include "orlicz_gauss/ou_semigroup.hpp"
#include "orlicz_gauss/inequalities.hpp"
#include "orlicz_gauss/suite.hpp"
#include "orlicz_gauss/info_geom.hpp"

#endif  // ORLICZ_GAUSS_ORLICZ_GAUSS_HPP
