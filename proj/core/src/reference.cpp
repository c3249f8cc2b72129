#include "emknot/reference.hpp"

#include <cmath>
#include <numbers>

namespace emknot::reference {

using std::numbers::pi;

namespace {

HalfInteger h(int twice) { return HalfInteger::from_twice(twice); }

struct Weighted {
  int m2;  // twice m
  int n2;  // twice n
  double w;
};

double quadratic(const ModeCoefficients& L, std::initializer_list<Weighted> terms) {
  double s = 0.0;
  for (const auto& t : terms) s += t.w * std::norm(L(h(t.m2), h(t.n2)));
  return s;
}

// conj(L(a)) * L(b)
cplx cross(const ModeCoefficients& L, int am2, int an2, int bm2, int bn2) {
  return std::conj(L(h(am2), h(an2))) * L(h(bm2), h(bn2));
}

}  // namespace

std::vector<ReferenceValue> general(const ModeCoefficients& lambda) {
  const double E = energy_closed(lambda);
  const double l2 = lambda.ell() * lambda.ell();
  return {{"E", E}, {"V0", l2 * E}, {"K1", 0.0}, {"K2", 0.0}, {"K3", 0.0}, {"D", 0.0},
          {"Pr", 0.0}, {"Lr", 0.0}, {"Vr", 0.0}};
}

std::vector<ReferenceValue> spin0(const ModeCoefficients& lambda) {
  const double ell = lambda.ell();
  const cplx a = lambda(h(0), h(-2));
  const cplx b = lambda(h(0), h(0));
  const cplx c = lambda(h(0), h(2));
  const double s2 = std::sqrt(2.0);
  const cplx I(0.0, 1.0);
  const double P1 = (-s2 / ell * ((std::conj(a) + std::conj(c)) * b + std::conj(b) * (a + c))).real();
  const double P2 = (I * s2 / ell * ((-std::conj(a) + std::conj(c)) * b + std::conj(b) * (a - c))).real();
  const double P3 = 2.0 / ell * (std::norm(a) - std::norm(c));
  const double l2 = ell * ell;
  const double l3 = l2 * ell;
  return {{"P1", P1},
          {"P2", P2},
          {"P3", P3},
          {"L1", -l2 * P1},
          {"L2", -l2 * P2},
          {"L3", -l2 * P3},
          {"V1", l2 * P1},
          {"V2", l2 * P2},
          {"V3", l2 * P3},
          {"Ptheta", 0.0},
          {"Pphi", ell * P3},
          {"Ltheta", 4.0 / 3.0 * l2 * P3},
          {"Lphi", -1.0 / 3.0 * l2 * P3},
          {"Vtheta", -4.0 / 3.0 * l3 * P3},
          {"Vphi", -5.0 / 3.0 * l3 * P3}};
}

std::vector<ReferenceValue> spin_half_and_one(const ModeCoefficients& L) {
  const double ell = L.ell();
  double P3 = 0.0, Pphi = 0.0, L3 = 0.0;
  if (L.j().twice() == 1) {
    P3 = 9.0 / ell *
         quadratic(L, {{-1, -3, 1}, {-1, 1, -1}, {-1, 3, -2}, {1, -3, 2}, {1, -1, 1}, {1, 3, -1}});
    Pphi = 9.0 * quadratic(L, {{-1, -3, 2}, {-1, -1, 1}, {-1, 3, -1}, {1, -3, 1}, {1, 1, -1}, {1, 3, -2}});
    L3 = 9.0 * ell * quadratic(L, {{-1, -3, -2}, {-1, -1, -1}, {-1, 3, 1}, {1, -3, -1}, {1, 1, 1}, {1, 3, 2}});
  } else if (L.j().twice() == 2) {
    P3 = 24.0 / ell *
         quadratic(L, {{-2, -4, 1},
                       {-2, 0, -1},
                       {-2, 2, -2},
                       {-2, 4, -3},
                       {0, -4, 2},
                       {0, -2, 1},
                       {0, 2, -1},
                       {0, 4, -2},
                       {2, -4, 3},
                       {2, -2, 2},
                       {2, 0, 1},
                       {2, 4, -1}});
    const double bracket = quadratic(L, {{-2, -4, 3},
                                         {-2, -2, 2},
                                         {-2, 0, 1},
                                         {-2, 4, -1},
                                         {0, -4, 2},
                                         {0, -2, 1},
                                         {0, 2, -1},
                                         {0, 4, -2},
                                         {2, -4, 1},
                                         {2, 0, -1},
                                         {2, 2, -2},
                                         {2, 4, -3}});
    Pphi = 24.0 * bracket;
    L3 = -24.0 * ell * bracket;
  } else {
    return {};
  }
  return {{"P3", P3}, {"Pphi", Pphi}, {"L3", L3}, {"V3", ell * ell * P3}, {"Ptheta", 0.0}};
}

std::vector<ReferenceValue> spin_half_spherical(const ModeCoefficients& L) {
  if (L.j().twice() != 1) return {};
  const double ell = L.ell();
  const double l2 = ell * ell;
  const double s3 = std::sqrt(3.0);
  // conj(L_{1/2,-3/2}) L_{-1/2,-1/2} - conj(L_{1/2,1/2}) L_{-1/2,3/2}
  //   + conj(L_{-1/2,-1/2}) L_{1/2,-3/2} - conj(L_{-1/2,3/2}) L_{1/2,1/2}
  const double mix =
      (cross(L, 1, -3, -1, -1) - cross(L, 1, 1, -1, 3) + cross(L, -1, -1, 1, -3) - cross(L, -1, 3, 1, 1)).real();

  const double Ltheta =
      12.0 / 5.0 * ell *
      quadratic(L, {{-1, -3, 9}, {-1, -1, 6}, {-1, 1, 1}, {-1, 3, -6}, {1, -3, 6}, {1, -1, -1}, {1, 1, -6}, {1, 3, -9}});
  const double Lphi =
      -3.0 / 5.0 * ell *
      (quadratic(L,
                 {{-1, -3, 6}, {-1, -1, -1}, {-1, 1, -6}, {-1, 3, -9}, {1, -3, 9}, {1, -1, 6}, {1, 1, 1}, {1, 3, -6}}) +
       s3 * mix);
  const double Vtheta = -6.0 / 5.0 * l2 *
                        quadratic(L, {{-1, -3, 9},
                                      {-1, -1, 1},
                                      {-1, 1, -9},
                                      {-1, 3, -21},
                                      {1, -3, 21},
                                      {1, -1, 9},
                                      {1, 1, -1},
                                      {1, 3, -9}});
  const double Vphi = -3.0 / 5.0 * l2 *
                      (quadratic(L, {{-1, -3, 42},
                                     {-1, -1, 33},
                                     {-1, 1, 8},
                                     {-1, 3, -33},
                                     {1, -3, 33},
                                     {1, -1, -8},
                                     {1, 1, -33},
                                     {1, 3, -42}}) -
                       8.0 * s3 * mix);
  return {{"Ltheta", Ltheta}, {"Lphi", Lphi}, {"Vtheta", Vtheta}, {"Vphi", Vphi}};
}

std::vector<ReferenceValue> hopfian_tt_table(double c) {
  const double E = 2.0 * pi * pi / std::pow(1.0 - c, 5);
  const double l2 = (1.0 - c) * (1.0 - c);
  return {{"E", E},           {"P1", 0.0},  {"P2", 0.0}, {"P3", 0.25 * E}, {"K1", 0.0},
          {"K2", 0.0},        {"K3", 0.0},  {"L1", 0.0}, {"L2", 0.0},      {"L3", -0.25 * l2 * E},
          {"D", 0.0},         {"V0", l2 * E}, {"V1", 0.0}, {"V2", 0.0},    {"V3", 0.25 * l2 * E}};
}

std::vector<ReferenceValue> hopfian_rotated_table(double theta) {
  const double E = 2.0 * pi * pi * std::cosh(theta) * std::cosh(theta);
  const double th = std::tanh(theta);
  const double sech = 1.0 / std::cosh(theta);
  return {{"E", E},
          {"P1", 0.0},
          {"P2", -0.25 * th * E},
          {"P3", 0.25 * sech * E},
          {"K1", 0.0},
          {"K2", 0.0},
          {"K3", 0.0},
          {"L1", 0.0},
          {"L2", 0.25 * th * E},
          {"L3", -0.25 * sech * E},
          {"D", 0.0},
          {"V0", E},
          {"V1", 0.0},
          {"V2", -0.25 * th * E},
          {"V3", 0.25 * sech * E}};
}

bool is_tabulated_vector(const std::string& name) {
  if (name.empty()) return false;
  const char c = name[0];
  if (c != 'P' && c != 'L' && c != 'V') return false;
  if (name == "V0") return false;
  const std::string rest = name.substr(1);
  return rest == "1" || rest == "2" || rest == "3" || rest == "theta" || rest == "phi";
}

}  // namespace emknot::reference
