#include "diraclab/bracketing.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "diraclab/error.hpp"
#include "diraclab/numerics.hpp"

namespace diraclab {

namespace {

int piece_mesh(int N, double len, double t) {
  int n = static_cast<int>(std::ceil(N * len / t));
  if (n % 2) ++n;
  return std::max(64, n);
}

struct Tagged {
  double value;
  double error;
  int piece;
};

}  // namespace

BracketReport bracketing_check(const TransformedProblem& tp, const std::vector<double>& cuts,
                               const std::vector<int>& subset, int J, int mesh) {
  if (subset.empty()) throw InputError("bracketing: piece subset must be nonempty");
  if (J < 1) throw InputError("bracketing: J must be >= 1");
  if (!(tp.t > 0.0)) throw InputError("bracketing: interval length must be positive");
  for (std::size_t i = 0; i < cuts.size(); ++i) {
    if (!(cuts[i] > 0.0 && cuts[i] < tp.t)) throw InputError("bracketing: cuts must lie strictly inside (0, t)");
    if (i > 0 && !(cuts[i] > cuts[i - 1])) throw InputError("bracketing: cuts must be strictly ascending");
  }
  const int pieces = static_cast<int>(cuts.size()) + 1;
  std::set<int> chosen;
  for (int s : subset) {
    if (s < 0 || s >= pieces) throw InputError("bracketing: piece index out of range");
    if (!chosen.insert(s).second) throw InputError("bracketing: repeated piece index");
  }

  BracketReport rep;
  rep.t = tp.t;
  rep.cuts = cuts;
  rep.subset.assign(chosen.begin(), chosen.end());
  rep.J = J;
  rep.mesh = mesh;

  std::vector<double> ends{0.0};
  ends.insert(ends.end(), cuts.begin(), cuts.end());
  ends.push_back(tp.t);

  // Index 0 is the full problem, the rest are the chosen pieces.
  const auto solves = parallel_map<SpectrumResult>(rep.subset.size() + 1, [&](std::size_t i) {
    if (i == 0) return solve_transformed(tp, J, mesh);
    const int p = rep.subset[i - 1];
    const double a = ends[static_cast<std::size_t>(p)];
    const double b = ends[static_cast<std::size_t>(p) + 1];
    TransformedProblem piece;
    piece.t = b - a;
    piece.branch_id = tp.branch_id;
    piece.V = [V = tp.V, a](double s) { return V(a + s); };
    return solve_transformed(piece, J, piece_mesh(mesh, b - a, tp.t));
  });

  std::vector<Tagged> merged;
  for (std::size_t i = 1; i < solves.size(); ++i)
    for (std::size_t j = 0; j < solves[i].eigenvalues.size(); ++j)
      merged.push_back({solves[i].eigenvalues[j], solves[i].error_estimates[j], rep.subset[i - 1]});
  std::stable_sort(merged.begin(), merged.end(), [](const Tagged& a, const Tagged& b) {
    return a.value < b.value || (a.value == b.value && a.piece < b.piece);
  });

  const auto& full = solves[0];
  for (int j = 0; j < J; ++j) {
    const auto& m = merged[static_cast<std::size_t>(j)];
    BracketRow row;
    row.j = j;
    row.lambda = full.eigenvalues[static_cast<std::size_t>(j)];
    row.mu = m.value;
    row.margin = row.mu - row.lambda;
    // Bisection leaves up to 1e-10 in each raw value, which the Richardson
    // step can amplify by at most 4/3 + 1/3.
    row.tolerance = full.error_estimates[static_cast<std::size_t>(j)] + m.error + 4.0 * kBisectionTolerance;
    row.piece = m.piece;
    if (row.margin < -row.tolerance) rep.pass = false;
    rep.rows.push_back(row);
  }
  return rep;
}

double TrigPotential::operator()(double u) const {
  const double w = 2.0 * std::numbers::pi * u / period;
  double v = a0;
  for (std::size_t k = 0; k < cos.size(); ++k) v += cos[k] * std::cos((k + 1) * w);
  for (std::size_t k = 0; k < sin.size(); ++k) v += sin[k] * std::sin((k + 1) * w);
  return v;
}

BracketCase random_bracket_case(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> coef(-2.0, 2.0);
  std::uniform_real_distribution<double> len(1.0, 4.0);
  std::uniform_int_distribution<int> ncuts(1, 3);

  BracketCase c;
  c.t = len(rng);
  c.potential.period = c.t;
  c.potential.a0 = coef(rng);
  for (int k = 0; k < 3; ++k) {
    c.potential.cos.push_back(coef(rng));
    c.potential.sin.push_back(coef(rng));
  }

  const int k = ncuts(rng);
  std::uniform_real_distribution<double> where(0.05 * c.t, 0.95 * c.t);
  for (;;) {
    c.cuts.clear();
    for (int i = 0; i < k; ++i) c.cuts.push_back(where(rng));
    std::sort(c.cuts.begin(), c.cuts.end());
    bool ok = true;
    for (int i = 1; i < k; ++i) ok = ok && c.cuts[i] - c.cuts[i - 1] >= 0.05 * c.t;
    if (ok) break;
  }

  std::uniform_int_distribution<int> coin(0, 1);
  for (int p = 0; p <= k; ++p)
    if (coin(rng)) c.subset.push_back(p);
  if (c.subset.empty()) c.subset.push_back(std::uniform_int_distribution<int>(0, k)(rng));
  return c;
}

std::vector<BracketReport> random_bracketing_suite(std::uint64_t seed, int cases, int J, int mesh) {
  if (cases < 1) throw InputError("bracketing suite needs at least one case");
  std::mt19937_64 rng(seed);
  std::vector<BracketCase> drawn;
  for (int i = 0; i < cases; ++i) drawn.push_back(random_bracket_case(rng));
  std::vector<BracketReport> out;
  for (const auto& c : drawn) {
    TransformedProblem tp;
    tp.t = c.t;
    tp.V = c.potential;
    auto rep = bracketing_check(tp, c.cuts, c.subset, J, mesh);
    rep.seed = seed;
    out.push_back(std::move(rep));
  }
  return out;
}

}  // namespace diraclab
