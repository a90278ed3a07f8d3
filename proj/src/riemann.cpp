#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "natspec/certifier.hpp"

namespace natspec {

namespace {

std::vector<Frequency> merge_duplicates(const std::vector<Frequency>& freqs, std::size_t& merged) {
  std::map<std::pair<std::vector<std::int64_t>, std::vector<std::int64_t>>, std::size_t> slot;
  std::vector<Frequency> out;
  merged = 0;
  for (const auto& f : freqs) {
    auto key = std::make_pair(f.chi, f.r);
    auto it = slot.find(key);
    if (it == slot.end()) {
      slot.emplace(std::move(key), out.size());
      out.push_back(f);
    } else {
      out[it->second].coeff += f.coeff;
      ++merged;
    }
  }
  return out;
}

void validate(const FiniteAbelianGroup& h, std::size_t d, const std::vector<Frequency>& freqs) {
  for (const auto& f : freqs) {
    if (f.chi.size() != h.rank() || f.r.size() != d) {
      throw Error(ErrorCode::DimensionMismatch, "frequency tuple does not match the finite part and rank");
    }
  }
}

}  // namespace

std::size_t separation_n(const std::vector<Frequency>& freqs) {
  std::size_t merged = 0;
  const auto unique = merge_duplicates(freqs, merged);
  std::int64_t spread = 0;
  for (std::size_t i = 0; i < unique.size(); ++i) {
    for (std::size_t j = i + 1; j < unique.size(); ++j) {
      if (unique[i].chi != unique[j].chi) continue;
      for (std::size_t k = 0; k < unique[i].r.size(); ++k) {
        spread = std::max<std::int64_t>(spread, std::llabs(unique[i].r[k] - unique[j].r[k]));
      }
    }
  }
  for (std::int64_t n = 1; n <= spread + 1; ++n) {
    bool separated = true;
    for (std::size_t i = 0; i < unique.size() && separated; ++i) {
      for (std::size_t j = i + 1; j < unique.size() && separated; ++j) {
        if (unique[i].chi != unique[j].chi) continue;
        bool same = true;
        for (std::size_t k = 0; k < unique[i].r.size(); ++k) {
          same = same && ((unique[i].r[k] - unique[j].r[k]) % n == 0);
        }
        separated = !same;
      }
    }
    if (separated) return static_cast<std::size_t>(n);
  }
  return static_cast<std::size_t>(spread + 1);
}

double riemann_value(const FiniteAbelianGroup& h, std::size_t d, const std::vector<Frequency>& freqs, std::size_t n) {
  std::vector<Index> chi_index;
  for (const auto& f : freqs) chi_index.push_back(h.index(std::span(f.chi)));
  const auto nn = static_cast<std::int64_t>(n);
  std::size_t cells = 1;
  for (std::size_t k = 0; k < d; ++k) cells *= n;
  // Per-frequency unit roots for every residue.
  std::vector<Complex> roots(n);
  for (std::size_t k = 0; k < n; ++k) roots[k] = unit_root(static_cast<std::int64_t>(k), nn);
  std::vector<std::int64_t> rmod(freqs.size() * d);
  for (std::size_t i = 0; i < freqs.size(); ++i) {
    for (std::size_t k = 0; k < d; ++k) rmod[i * d + k] = ((freqs[i].r[k] % nn) + nn) % nn;
  }
  double total = 0.0;
  std::vector<std::int64_t> x(d, 0);
  for (Index hh = 0; hh < h.order(); ++hh) {
    std::vector<Complex> base(freqs.size());
    for (std::size_t i = 0; i < freqs.size(); ++i) base[i] = freqs[i].coeff * pair(h, chi_index[i], hh);
    std::fill(x.begin(), x.end(), 0);
    for (std::size_t cell = 0; cell < cells; ++cell) {
      Complex acc = 0.0;
      for (std::size_t i = 0; i < freqs.size(); ++i) {
        std::int64_t phase = 0;
        for (std::size_t k = 0; k < d; ++k) phase = (phase + x[k] * rmod[i * d + k]) % nn;
        acc += base[i] * roots[static_cast<std::size_t>(phase)];
      }
      total += std::abs(acc);
      for (std::size_t k = d; k-- > 0;) {
        if (++x[k] < nn) break;
        x[k] = 0;
      }
    }
  }
  return total / (static_cast<double>(h.order()) * static_cast<double>(cells));
}

RiemannTable riemann_a_norm(const std::vector<std::int64_t>& h_moduli, std::size_t d,
                            const std::vector<Frequency>& freqs, const std::vector<std::size_t>& ladder) {
  if (ladder.empty()) throw Error(ErrorCode::InvalidArgument, "empty N ladder");
  const auto h = FiniteAbelianGroup::make(h_moduli);
  validate(h, d, freqs);
  RiemannTable t;
  t.h_moduli = h_moduli;
  t.d = d;
  std::vector<Frequency> reduced;
  for (auto f : freqs) {
    for (std::size_t j = 0; j < f.chi.size(); ++j) f.chi[j] = ((f.chi[j] % h_moduli[j]) + h_moduli[j]) % h_moduli[j];
    reduced.push_back(std::move(f));
  }
  const auto unique = merge_duplicates(reduced, t.merged_duplicates);
  t.n0 = d == 0 ? 1 : separation_n(unique);
  for (auto n : ladder) {
    if (n < t.n0) {
      throw Error(ErrorCode::NBelowSeparation, "N = " + std::to_string(n) + " is below the separating value " +
                                                   std::to_string(t.n0));
    }
  }
  for (auto n : ladder) t.rows.push_back({n, riemann_value(h, d, unique, n), 0.0, 0.0});
  const auto ref = std::max_element(t.rows.begin(), t.rows.end(),
                                    [](const RiemannRow& a, const RiemannRow& b) { return a.n < b.n; });
  t.reference = ref->value;
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    t.rows[i].gap_to_reference = std::abs(t.rows[i].value - t.reference);
    if (i > 0) t.rows[i].gap_to_previous = std::abs(t.rows[i].value - t.rows[i - 1].value);
  }
  for (std::size_t i = 2; i < t.rows.size(); ++i) {
    if (t.rows[i].gap_to_previous > t.rows[i - 1].gap_to_previous + 1e-12) t.cauchy = false;
  }
  return t;
}

}  // namespace natspec
