#pragma once

#include <vector>

#include "natspec/group.hpp"

namespace natspec {

enum class Side { Primal, Dual };
enum class Direction { Forward, Inverse };

std::string_view side_name(Side side) noexcept;

/// Dense complex function on a group. `side` records whether the indices are
/// elements of G or characters of G; both use the same enumeration.
struct GroupFunction {
  FiniteAbelianGroup group;
  Side side = Side::Primal;
  std::vector<Complex> values;

  static GroupFunction zeros(const FiniteAbelianGroup& group, Side side = Side::Primal);
  static GroupFunction from_real(const FiniteAbelianGroup& group, const std::vector<double>& values,
                                 Side side = Side::Primal);
  static GroupFunction indicator(const FiniteAbelianGroup& group, const std::vector<Index>& set,
                                 Side side = Side::Primal);

  std::size_t size() const noexcept { return values.size(); }
  Complex& operator[](Index i) { return values[i]; }
  const Complex& operator[](Index i) const { return values[i]; }

  GroupFunction with_side(Side s) const;
  bool is_real(double tol = 1e-12) const;
  std::vector<double> real_part() const;

  GroupFunction& operator+=(const GroupFunction& other);
  GroupFunction& operator-=(const GroupFunction& other);
  GroupFunction& operator*=(Complex s);
};

GroupFunction operator+(GroupFunction a, const GroupFunction& b);
GroupFunction operator-(GroupFunction a, const GroupFunction& b);
GroupFunction operator*(Complex s, GroupFunction a);

struct NormReport {
  double l1 = 0.0;
  double linf = 0.0;
  double a_norm = 0.0;
};

/**
 * Forward: f^(gamma) = (1/|G|) sum_x f(x) gamma(-x), primal -> dual.
 * Inverse: f(x) = sum_gamma f^(gamma) gamma(x), dual -> primal.
 */
GroupFunction dft(const GroupFunction& f, Direction direction);

/// Forward transform of f read as a function on its index set, ignoring the side tag.
std::vector<Complex> transform_values(const GroupFunction& f);

/// (f*g)(x) = (1/|G|) sum_y f(y) g(x-y).
GroupFunction convolve(const GroupFunction& f, const GroupFunction& g);

double l1_norm(const GroupFunction& f);
double linf_norm(const GroupFunction& f);
/// sum of |transform| over the opposite side of f.
double a_norm(const GroupFunction& f);
NormReport norms(const GroupFunction& f);

/// Density of the Haar probability of K: (|G|/|K|) 1_K.
GroupFunction subgroup_haar(const FiniteAbelianGroup& group, const Subgroup& k);

/// f * m_K, computed by coset averaging and by masking the transform to
/// K-perp. Throws Internal if the two disagree beyond 1e-10.
GroupFunction band_project(const GroupFunction& f, const Subgroup& k);
/// Coset-averaging path only.
GroupFunction coset_average(const GroupFunction& f, const Subgroup& k);

/// Distinct transform values, in order of first appearance, merged at `tol`.
std::vector<Complex> spectrum_sigma(const GroupFunction& f, double tol = 1e-9);

struct NaturalSpectrumReport {
  std::vector<Complex> sigma;
  std::vector<Complex> range_closure;
  bool natural = true;
};
NaturalSpectrumReport natural_spectrum_check(const GroupFunction& f, double tol = 1e-9);

double max_abs_diff(const std::vector<Complex>& a, const std::vector<Complex>& b);
double max_abs_diff(const GroupFunction& a, const GroupFunction& b);

}  // namespace natspec
