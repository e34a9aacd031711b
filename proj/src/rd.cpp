#include "hecke/rd.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <set>
#include <stdexcept>

#include "hecke/errors.hpp"
#include "hecke/parallel.hpp"
#include "hecke/random.hpp"

namespace hecke {

namespace {

struct Ols {
  double slope = 0;
  double intercept = 0;
  bool ok = false;
};

Ols ols(const std::vector<double>& x, const std::vector<double>& y) {
  Ols r;
  const auto n = static_cast<double>(x.size());
  if (x.size() < 2) return r;
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx <= 1e-300) return r;
  r.slope = sxy / sxx;
  r.intercept = my - r.slope * mx;
  r.ok = true;
  return r;
}

DegreeFit fit_degrees(std::vector<DegreeRecord> table) {
  if (table.empty()) throw std::invalid_argument("degree fit needs a nonempty table");
  DegreeFit fit;
  std::vector<double> x, y;
  double all_log = 0;
  for (const auto& e : table) {
    all_log += std::log(static_cast<double>(e.degree));
    if (e.length > 0) {
      x.push_back(std::log1p(e.length));
      y.push_back(std::log(static_cast<double>(e.degree)));
    }
  }
  const Ols r = ols(x, y);
  if (r.ok) {
    fit.t = r.slope;
    fit.D = std::exp(r.intercept);
  } else {
    fit.degenerate = true;
    fit.t = 0;
    fit.D = std::exp(all_log / static_cast<double>(table.size()));
  }
  fit.t_ceil = std::max(0, static_cast<int>(std::ceil(fit.t - 1e-9)));
  fit.minimal_D = 0;
  for (const auto& e : table)
    fit.minimal_D = std::max(fit.minimal_D, static_cast<double>(e.degree) /
                                                std::pow(1.0 + e.length, fit.t_ceil));
  fit.table = std::move(table);
  return fit;
}

Rational real_part_checked(const ExactComplex& c) {
  if (!c.is_real() || sgn(c.re) < 0)
    throw std::invalid_argument("transfer identities need nonnegative real coefficients");
  return c.re;
}

}  // namespace

DegreeFit degree_growth_fit(const HeckePair& pair, const LengthFunction& length, double rmax) {
  const BallIndex ball = enumerate_ball(pair, length, rmax);
  std::vector<DegreeRecord> table;
  for (const auto& e : ball.doubles()) table.push_back({e.key, e.length, e.degree});
  return fit_degrees(std::move(table));
}

DegreeFit degree_growth_fit(const HeckePair& pair, const LengthFunction& length,
                            const std::vector<GroupElement>& probes) {
  std::vector<DegreeRecord> table;
  for (const auto& g : probes) {
    DoubleCosetKey key = pair.double_coset(g);
    table.push_back({key, length(key.rep), degree(pair, g)});
  }
  return fit_degrees(std::move(table));
}

LogLogFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y) {
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < x.size() && i < y.size(); ++i)
    if (x[i] >= 1 && y[i] > 0) {
      lx.push_back(std::log1p(x[i]));
      ly.push_back(std::log(y[i]));
    }
  LogLogFit fit;
  fit.points = lx.size();
  const Ols r = ols(lx, ly);
  if (r.ok) {
    fit.C = std::exp(r.intercept);
    fit.s = r.slope;
  } else if (!ly.empty()) {
    fit.C = std::exp(ly.front());
  }
  return fit;
}

// ---------------------------------------------------------------- samplers

std::string to_string(SampleKind kind) {
  switch (kind) {
    case SampleKind::ball_characteristic: return "ball-characteristic";
    case SampleKind::delta: return "delta";
    case SampleKind::random: return "random";
  }
  return "unknown";
}

HeckeElement sample_f(const PairPtr& pair, const BallIndex& ball, std::uint64_t seed,
                      std::size_t radius_index, std::size_t sample_index, std::size_t n_samples,
                      long coefficient_max, SampleKind* kind) {
  const auto& doubles = ball.doubles();
  HeckeElement f(pair);
  if (doubles.empty()) return f;
  const std::size_t deltas = std::min(doubles.size(), std::max<std::size_t>(1, n_samples / 8));
  if (sample_index == 0) {
    for (const auto& d : doubles) f.add(d.key, ExactComplex(1));
    if (kind) *kind = SampleKind::ball_characteristic;
    return f;
  }
  if (sample_index <= deltas) {
    f.add(doubles[sample_index - 1].key, ExactComplex(1));
    if (kind) *kind = SampleKind::delta;
    return f;
  }
  std::mt19937_64 rng(task_seed(seed, radius_index, sample_index));
  for (const auto& d : doubles) f.add(d.key, ExactComplex(uniform_int(rng, 0, coefficient_max)));
  if (f.empty()) f.add(doubles.front().key, ExactComplex(1));
  if (kind) *kind = SampleKind::random;
  return f;
}

L2Vector sample_k(const PairPtr& pair, const BallIndex& ball, std::uint64_t seed,
                  std::size_t radius_index, std::size_t sample_index, long coefficient_max) {
  L2Vector k(pair);
  const auto& rights = ball.rights();
  if (rights.empty()) return k;
  if (sample_index % 2 == 0) {
    for (const auto& e : rights) k.add(e.key, ExactComplex(1));
    return k;
  }
  std::mt19937_64 rng(task_seed(seed ^ 0x6b5f3c1d2e4a7981ULL, radius_index, sample_index));
  for (const auto& e : rights) k.add(e.key, ExactComplex(uniform_int(rng, 0, coefficient_max)));
  if (k.empty()) k.add(rights.front().key, ExactComplex(1));
  return k;
}

Rational haagerup_ratio_squared(const HeckeElement& f, const L2Vector& k) {
  const Rational den = l2_squared(f) * l2_squared(k);
  if (sgn(den) == 0) return Rational(0);
  return l2_squared(apply_regular_rep(f, k)) / den;
}

// ---------------------------------------------------------------- scans

namespace {

void finish_fit(RDReport& report) {
  std::vector<double> r, exact, op;
  for (const auto& rec : report.records) {
    r.push_back(rec.radius);
    exact.push_back(rec.max_ratio_exact);
    op.push_back(rec.max_ratio_operator_lower);
  }
  report.fit_exact = fit_loglog(r, exact);
  report.fit_operator = fit_loglog(r, op);
  const LogLogFit& fit = report.fit_exact.points > 0 ? report.fit_exact : report.fit_operator;
  report.haagerup_s = fit.s + 1;
  report.haagerup_C = fit.C * std::pow(2.0, fit.s) * std::numbers::pi / std::sqrt(6.0);
}

void check_radii(const ScanOptions& opts) {
  if (opts.radii.empty()) throw std::invalid_argument("scan needs at least one radius");
  for (std::size_t i = 1; i < opts.radii.size(); ++i)
    if (!(opts.radii[i] > opts.radii[i - 1]))
      throw std::invalid_argument("scan radii must be strictly increasing");
}

}  // namespace

RDReport haagerup_scan_exact(const PairPtr& pair, const LengthFunction& length,
                             const ScanOptions& opts) {
  check_radii(opts);
  RDReport report;
  report.pair = pair->name();
  report.length = length.name();
  report.seed = opts.seed;
  report.samples = opts.samples;
  for (std::size_t ri = 0; ri < opts.radii.size(); ++ri) {
    const double r = opts.radii[ri];
    const BallIndex ball = enumerate_ball(*pair, length, r);
    const BallIndex big = enumerate_ball(*pair, length, std::max(r, opts.k_radius_factor * r));
    std::vector<Rational> ratios(opts.samples);
    std::vector<double> schur(opts.samples);
    std::vector<SampleKind> kinds(opts.samples);
    parallel_for(opts.samples, [&](std::size_t i) {
      const HeckeElement f =
          sample_f(pair, ball, opts.seed, ri, i, opts.samples, opts.coefficient_max, &kinds[i]);
      const L2Vector k = sample_k(pair, big, opts.seed, ri, i, opts.coefficient_max);
      ratios[i] = haagerup_ratio_squared(f, k);
      const double n2 = to_double(l2_squared(f));
      schur[i] = n2 > 0 ? norm_upper(f) / std::sqrt(n2) : 0.0;
    });
    RadiusRecord rec;
    rec.radius = r;
    rec.ball_double = ball.doubles().size();
    rec.ball_right = ball.rights().size();
    rec.samples = opts.samples;
    for (std::size_t i = 0; i < opts.samples; ++i) {
      if (i == 0 || ratios[i] > rec.max_ratio_exact_sq) {
        rec.max_ratio_exact_sq = ratios[i];
        rec.argmax_kind = to_string(kinds[i]);
      }
      rec.schur_upper = std::max(rec.schur_upper, schur[i]);
    }
    rec.max_ratio_exact = std::sqrt(to_double(rec.max_ratio_exact_sq));
    report.records.push_back(std::move(rec));
  }
  finish_fit(report);
  return report;
}

RDReport haagerup_scan_operator(const PairPtr& pair, const LengthFunction& length,
                                const ScanOptions& opts) {
  check_radii(opts);
  RDReport report;
  report.pair = pair->name();
  report.length = length.name();
  report.seed = opts.seed;
  report.samples = opts.operator_samples;
  for (std::size_t ri = 0; ri < opts.radii.size(); ++ri) {
    const double r = opts.radii[ri];
    const BallIndex ball = enumerate_ball(*pair, length, r);
    const double trunc = std::max(r, opts.operator_radius_factor * r);
    std::vector<double> lower(opts.operator_samples), schur(opts.operator_samples);
    parallel_for(opts.operator_samples, [&](std::size_t i) {
      const HeckeElement f =
          sample_f(pair, ball, opts.seed, ri, i, opts.operator_samples, opts.coefficient_max);
      const double n2 = to_double(l2_squared(f));
      if (n2 == 0) return;
      PowerIterationOptions p = opts.power;
      p.seed = task_seed(opts.seed, ri, i);
      lower[i] = norm_lower(f, length, trunc, p).lower / std::sqrt(n2);
      schur[i] = norm_upper(f) / std::sqrt(n2);
    });
    RadiusRecord rec;
    rec.radius = r;
    rec.ball_double = ball.doubles().size();
    rec.ball_right = ball.rights().size();
    rec.samples = opts.operator_samples;
    for (std::size_t i = 0; i < opts.operator_samples; ++i) {
      rec.max_ratio_operator_lower = std::max(rec.max_ratio_operator_lower, lower[i]);
      rec.schur_upper = std::max(rec.schur_upper, schur[i]);
    }
    report.records.push_back(std::move(rec));
  }
  finish_fit(report);
  return report;
}

RDReport haagerup_scan(const PairPtr& pair, const LengthFunction& length, const ScanOptions& opts) {
  RDReport exact = haagerup_scan_exact(pair, length, opts);
  const RDReport op = haagerup_scan_operator(pair, length, opts);
  for (std::size_t i = 0; i < exact.records.size(); ++i) {
    exact.records[i].max_ratio_operator_lower = op.records[i].max_ratio_operator_lower;
    exact.records[i].schur_upper = std::max(exact.records[i].schur_upper, op.records[i].schur_upper);
  }
  exact.fit_operator = op.fit_operator;
  return exact;
}

// ---------------------------------------------------------------- transfer

GroupFunction group_convolve(const GroupFunction& u, const GroupFunction& v) {
  GroupFunction out;
  for (const auto& [x, a] : u)
    for (const auto& [z, b] : v) {
      auto [it, inserted] = out.emplace(mul(x, z), a * b);
      if (!inserted) it->second += a * b;
    }
  std::erase_if(out, [](const auto& e) { return sgn(e.second) == 0; });
  return out;
}

Rational l2_squared(const GroupFunction& u) {
  Rational s = 0;
  for (const auto& [x, a] : u) s += a * a;
  return s;
}

GroupFunction lift(const HeckeElement& f) {
  const HeckePair& pair = *f.pair();
  const auto& H = pair.subgroup_elements();
  if (!H) throw Unsupported("lifts need a finite subgroup");
  GroupFunction out;
  for (const auto& [key, c] : f.terms()) {
    const Rational v = real_part_checked(c);
    for (const auto& coset : *cached_decomposition(pair, key))
      for (const auto& h : *H) out.emplace(mul(h, coset.rep), v);
  }
  return out;
}

GroupFunction lift(const L2Vector& k) {
  const HeckePair& pair = *k.pair();
  const auto& H = pair.subgroup_elements();
  if (!H) throw Unsupported("lifts need a finite subgroup");
  GroupFunction out;
  for (const auto& [key, c] : k.terms()) {
    const Rational v = real_part_checked(c);
    for (const auto& h : *H) out.emplace(mul(h, key.rep), v);
  }
  return out;
}

namespace {

Rational value_at(const GroupFunction& u, const GroupElement& x) {
  auto it = u.find(x);
  return it == u.end() ? Rational(0) : it->second;
}

}  // namespace

HeckeElement bar_double(const PairPtr& pair, const GroupFunction& f) {
  const auto& H = *pair->subgroup_elements();
  std::set<DoubleCosetKey> touched;
  for (const auto& [x, a] : f) touched.insert(pair->double_coset(x));
  HeckeElement out(pair);
  for (const auto& key : touched) {
    Rational s = 0;
    for (const auto& hi : H) {
      const GroupElement hg = mul(hi, key.rep);
      for (const auto& hj : H) s += value_at(f, mul(hg, hj));
    }
    out.add(key, ExactComplex(s));
  }
  return out;
}

L2Vector bar_right(const PairPtr& pair, const GroupFunction& k) {
  const auto& H = *pair->subgroup_elements();
  std::set<CosetKey> touched;
  for (const auto& [x, a] : k) touched.insert(pair->right_coset(x));
  L2Vector out(pair);
  for (const auto& key : touched) {
    Rational s = 0;
    for (const auto& h : H) s += value_at(k, mul(h, key.rep));
    out.add(key, ExactComplex(s));
  }
  return out;
}

bool TransferReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
}

namespace {

TransferCheck equal(std::string name, Rational lhs, Rational rhs) {
  const bool ok = lhs == rhs;
  return {std::move(name), "=", std::move(lhs), std::move(rhs), ok};
}

TransferCheck at_most(std::string name, Rational lhs, Rational rhs) {
  const bool ok = lhs <= rhs;
  return {std::move(name), "<=", std::move(lhs), std::move(rhs), ok};
}

/// max over x of u(x) - w(x); nonpositive iff u <= w pointwise on supp u.
Rational pointwise_excess(const GroupFunction& u, const GroupFunction& w) {
  Rational worst = 0;
  for (const auto& [x, a] : u) worst = std::max(worst, Rational(a - value_at(w, x)));
  return worst;
}

GroupFunction random_on(const std::vector<GroupElement>& support, std::mt19937_64& rng) {
  GroupFunction out;
  for (const auto& x : support)
    if (const auto v = uniform_int(rng, 0, 9); v != 0) out.emplace(x, Rational(v));
  if (out.empty() && !support.empty()) out.emplace(support.front(), Rational(1));
  return out;
}

}  // namespace

TransferReport transfer_check(const HeckeElement& f, const L2Vector& k, std::uint64_t seed) {
  if (f.pair() != k.pair()) throw std::invalid_argument("f and k belong to different pairs");
  const PairPtr& pair = f.pair();
  TransferReport report;
  const std::size_t n = pair->subgroup_order();
  report.n = n;
  const Rational N(static_cast<long>(n));

  const GroupFunction ft = lift(f);
  const GroupFunction kt = lift(k);
  report.checks.push_back(equal("lift norm of k", l2_squared(kt), N * l2_squared(k)));
  report.checks.push_back(equal("lift norm of f", l2_squared(ft), N * l2_squared(f)));
  report.checks.push_back(equal("convolution through lifts", N * N * N * l2_squared(apply_regular_rep(f, k)),
                                l2_squared(group_convolve(ft, kt))));

  std::set<GroupElement> working;
  for (const auto& [x, a] : ft) working.insert(x);
  for (const auto& [x, a] : kt) working.insert(x);
  report.working_set = working.size();
  const std::vector<GroupElement> support(working.begin(), working.end());

  std::mt19937_64 rng(splitmix64(seed));
  const std::vector<GroupFunction> us{ft, random_on(support, rng)};
  const std::vector<GroupFunction> vs{kt, random_on(support, rng)};
  const std::vector<std::string> tags{"lift", "random"};
  for (std::size_t i = 0; i < us.size(); ++i) {
    const GroupFunction& u = us[i];
    const GroupFunction& v = vs[i];
    const HeckeElement ub = bar_double(pair, u);
    const L2Vector vb = bar_right(pair, v);
    const std::string tag = " (" + tags[i] + ")";
    report.checks.push_back(at_most("double bar bound" + tag, l2_squared(ub), N * N * N * l2_squared(u)));
    report.checks.push_back(at_most("right bar bound" + tag, l2_squared(vb), N * l2_squared(v)));
    const GroupFunction ubt = lift(ub);
    const GroupFunction vbt = lift(vb);
    report.checks.push_back(at_most("f below lifted bar" + tag, pointwise_excess(u, ubt), 0));
    report.checks.push_back(at_most("k below lifted bar" + tag, pointwise_excess(v, vbt), 0));
    const GroupFunction lifted_product = group_convolve(ubt, vbt);
    report.checks.push_back(at_most("convolution below lifted bars" + tag,
                                    pointwise_excess(group_convolve(u, v), lifted_product), 0));
    report.checks.push_back(equal("lifted bar convolution" + tag, l2_squared(lifted_product),
                                  N * N * N * l2_squared(apply_regular_rep(ub, vb))));
  }
  for (const std::size_t m : {n, n * n}) {
    const auto cs = cauchy_schwarz_check(m, 64, seed + m);
    report.checks.push_back(equal("c(" + std::to_string(m) + ") at constant vectors", cs.constant_ratio,
                                  Rational(static_cast<long>(m))));
    report.checks.push_back(at_most("c(" + std::to_string(m) + ") over samples", cs.max_ratio,
                                    Rational(static_cast<long>(m))));
  }
  return report;
}

CauchySchwarzReport cauchy_schwarz_check(std::size_t m, std::size_t trials, std::uint64_t seed) {
  if (m == 0) throw std::invalid_argument("Cauchy-Schwarz check needs m >= 1");
  CauchySchwarzReport r;
  r.m = m;
  auto ratio = [](const std::vector<long>& x) {
    Integer s = 0, q = 0;
    for (long v : x) {
      s += v;
      q += Integer(v) * v;
    }
    if (q == 0) return Rational(0);
    return make_rational(s * s, q);
  };
  r.constant_ratio = ratio(std::vector<long>(m, 7));
  r.max_ratio = r.constant_ratio;
  std::mt19937_64 rng(splitmix64(seed));
  for (std::size_t t = 0; t < trials; ++t) {
    std::vector<long> x(m);
    for (auto& v : x) v = uniform_int(rng, 0, 1000);
    r.max_ratio = std::max(r.max_ratio, ratio(x));
  }
  const Rational M(static_cast<long>(m));
  r.bounded = r.max_ratio <= M;
  r.equality_at_constant = r.constant_ratio == M;
  return r;
}

}  // namespace hecke
