#pragma once

#include <string>
#include <vector>

#include "emknot/charges.hpp"

namespace emknot::reference {

/// Closed forms valid for every spin: E, V0 = ell^2 E, and the charges that
/// vanish by parity (K, D, Pr, Lr, Vr).
std::vector<ReferenceValue> general(const ModeCoefficients& lambda);

/// j = 0 quadratic forms for P and the ratios that fix L, V and the spherical
/// components in terms of P.
std::vector<ReferenceValue> spin0(const ModeCoefficients& lambda);

/// Tabulated P3, Pphi and L3 for j = 1/2 and j = 1, with V3 = ell^2 P3 and
/// Ptheta = 0.
std::vector<ReferenceValue> spin_half_and_one(const ModeCoefficients& lambda);

/// Tabulated Ltheta, Lphi, Vtheta, Vphi for j = 1/2.
std::vector<ReferenceValue> spin_half_spherical(const ModeCoefficients& lambda);

/// Tabulated charges of the time-translated Hopfian with parameter c.
std::vector<ReferenceValue> hopfian_tt_table(double c);

/// Tabulated charges of the rotated Hopfian with parameter theta.
std::vector<ReferenceValue> hopfian_rotated_table(double theta);

/// True for the names whose references come from tabulated vector-charge
/// forms (P, L, V and their spherical components).
bool is_tabulated_vector(const std::string& name);

}  // namespace emknot::reference
