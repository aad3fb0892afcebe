#include "mahler/measure.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <exception>
#include <limits>
#include <mutex>
#include <numbers>
#include <random>
#include <stdexcept>
#include <thread>
#include <utility>
#include <vector>

#include "mahler/rational.hpp"

namespace mahler {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr std::size_t kLatticeDims = 24;
constexpr std::size_t kMaxTensorNodes = std::size_t{1} << 24;
constexpr std::size_t kMaxExponentSpan = std::size_t{1} << 20;

struct LatticeEntry {
  std::size_t n;  // prime node count
  std::array<std::uint64_t, kLatticeDims> z;
};

// Rank-1 lattice generating vectors at prime sizes. Components were
// constructed component-by-component for the weighted Korobov space with
// product weights 1/d^2, so a prefix of each vector is itself a good
// generator for lower-dimensional integrals.
constexpr std::array<LatticeEntry, 11> kLatticeTable = {{
    {1021ul,
     {1, 374, 428, 568, 240, 251, 311, 183, 149, 979, 487, 206,
      664, 628, 735, 554, 76, 952, 347, 158, 211, 877, 846, 925}},
    {2039ul,
     {1, 1249, 284, 1386, 1493, 442, 376, 485, 824, 1042, 1508, 118,
      1889, 360, 1849, 895, 1560, 318, 559, 1434, 1830, 1007, 1106, 1352}},
    {4093ul,
     {1, 1715, 2671, 1952, 3166, 554, 1870, 749, 1546, 4026, 410, 3406,
      2196, 2915, 3252, 2303, 2955, 3650, 1093, 3731, 1996, 982, 3285, 1226}},
    {8191ul,
     {1, 2431, 3799, 1729, 969, 5908, 848, 660, 5964, 7043, 2600, 7444,
      2715, 926, 2972, 2743, 4617, 677, 3845, 6364, 4056, 2591, 5252, 1122}},
    {16381ul,
     {1, 3711, 6101, 14699, 4942, 1997, 5605, 2974, 11631, 14081, 2904, 10735,
      14617, 3412, 9960, 10007, 15280, 11756, 12800, 2847, 1265, 3504, 6669, 15009}},
    {32749ul,
     {1, 12509, 18235, 9245, 6878, 17438, 1421, 22017, 30152, 24805, 27628, 3568,
      11494, 18354, 18643, 3883, 22664, 20383, 16183, 22476, 24148, 13144, 28717, 21857}},
    {65537ul,
     {1, 38629, 48377, 50935, 25281, 17774, 33620, 39420, 4615, 11466, 60991, 5249,
      20382, 5904, 16633, 22744, 58181, 48831, 59563, 19932, 58013, 49719, 20903, 42311}},
    {131071ul,
     {1, 81308, 11743, 108915, 41024, 73569, 9563, 80136, 127932, 63733, 59428, 14466,
      127725, 95143, 16903, 62127, 21497, 99169, 125075, 8528, 98668, 82244, 25139, 82374}},
    {262139ul,
     {1, 147787, 211620, 193650, 127505, 232693, 94578, 250026, 136500, 27001, 247313, 190683,
      116847, 77817, 234289, 9088, 71271, 23177, 230361, 63253, 78122, 232289, 15724, 27958}},
    {524287ul,
     {1, 153309, 134071, 324740, 51901, 477376, 54196, 127035, 165021, 461982, 168903, 37748,
      292971, 456497, 161672, 132037, 92057, 430781, 110417, 396038, 401457, 234332, 125564, 350178}},
    {1048573ul,
     {1, 307062, 394648, 497329, 182091, 141737, 703250, 233212, 594355, 1007588, 1038946, 254342,
      728708, 581044, 109505, 675681, 228889, 521037, 891322, 659997, 824465, 1030818, 956341, 645160}},
}};

const LatticeEntry& pick_lattice(std::size_t requested) {
  for (const auto& e : kLatticeTable)
    if (e.n >= requested) return e;
  return kLatticeTable.back();
}

// One monomial of a compiled integrand: coefficient times powers of the outer
// variables, accumulated into the `slot`-th coefficient of the reduction
// variable.
struct CompiledTerm {
  std::size_t slot;
  std::complex<double> coeff;
  std::vector<std::pair<std::size_t, std::int64_t>> pows;  // (dim, exponent)
};

struct CompiledSide {
  std::vector<CompiledTerm> terms;
  std::size_t ncoef = 1;
  double pole_eps = 0.0;
};

struct Integrand {
  std::vector<std::string> dims;   // outer variables, fixed order
  std::vector<std::int64_t> tlo;   // power-table exponent range per dim
  std::vector<std::int64_t> thi;
  CompiledSide num, den;
  bool reduced = false;  // per-node value is a univariate Jensen measure
};

struct Scratch {
  std::vector<std::vector<std::complex<double>>> pw;
  std::vector<std::complex<double>> cnum, cden;
  bool relaxed = false;
  std::string note;
};

Scratch make_scratch(const Integrand& in) {
  Scratch s;
  s.pw.resize(in.dims.size());
  for (std::size_t d = 0; d < in.dims.size(); ++d)
    s.pw[d].resize(static_cast<std::size_t>(in.thi[d] - in.tlo[d] + 1));
  return s;
}

void compile_side(const LaurentPoly& p, const std::string& reduce_var,
                  const std::vector<std::string>& dims, double pole_epsilon,
                  CompiledSide& side, std::vector<std::int64_t>& tlo,
                  std::vector<std::int64_t>& thi) {
  std::int64_t rlo = 0, rhi = 0;
  bool has_red = !reduce_var.empty() && p.uses(reduce_var);
  if (has_red) {
    rlo = p.min_exponent_in(reduce_var);
    rhi = p.degree_in(reduce_var);
    if (static_cast<std::size_t>(rhi - rlo) + 1 > 501)
      throw NumericError("specialized degree exceeds the root solver cap");
  }
  side.ncoef = has_red ? static_cast<std::size_t>(rhi - rlo + 1) : 1;

  const auto& names = p.variables();
  std::vector<int> map(names.size(), -1);  // side var index -> dim index; -2 = reduction
  for (std::size_t v = 0; v < names.size(); ++v) {
    if (names[v] == reduce_var) {
      map[v] = -2;
      continue;
    }
    auto it = std::find(dims.begin(), dims.end(), names[v]);
    map[v] = static_cast<int>(it - dims.begin());
  }

  double maxc = 0.0;
  for (const auto& [exps, coeff] : p.terms()) {
    CompiledTerm t;
    t.slot = 0;
    t.coeff = coeff.to_complex();
    maxc = std::max(maxc, std::abs(t.coeff));
    for (std::size_t v = 0; v < exps.size(); ++v) {
      if (exps[v] == 0) continue;
      if (map[v] == -2) {
        t.slot = static_cast<std::size_t>(exps[v] - rlo);
      } else {
        std::size_t d = static_cast<std::size_t>(map[v]);
        t.pows.emplace_back(d, exps[v]);
        tlo[d] = std::min(tlo[d], exps[v]);
        thi[d] = std::max(thi[d], exps[v]);
      }
    }
    side.terms.push_back(std::move(t));
  }
  side.pole_eps = pole_epsilon > 0.0 ? pole_epsilon : 1e-14 * maxc;
}

Integrand build_integrand(const RationalFn& p, const std::string& reduce_var,
                          double pole_epsilon) {
  Integrand in;
  in.reduced = !reduce_var.empty();
  for (const auto& v : p.variables())
    if (v != reduce_var) in.dims.push_back(v);
  in.tlo.assign(in.dims.size(), 0);
  in.thi.assign(in.dims.size(), 0);
  compile_side(p.num(), reduce_var, in.dims, pole_epsilon, in.num, in.tlo, in.thi);
  compile_side(p.den(), reduce_var, in.dims, pole_epsilon, in.den, in.tlo, in.thi);
  for (std::size_t d = 0; d < in.dims.size(); ++d)
    if (static_cast<std::size_t>(in.thi[d] - in.tlo[d]) > kMaxExponentSpan)
      throw NumericError("exponent span too large for the quadrature engine");
  return in;
}

void fill_powers(const Integrand& in, Scratch& s, const std::complex<double>* z) {
  for (std::size_t d = 0; d < in.dims.size(); ++d) {
    auto& t = s.pw[d];
    const std::int64_t lo = in.tlo[d], hi = in.thi[d];
    const std::size_t zero = static_cast<std::size_t>(-lo);
    t[zero] = {1.0, 0.0};
    std::complex<double> acc{1.0, 0.0};
    for (std::int64_t e = 1; e <= hi; ++e) {
      acc *= z[d];
      t[zero + static_cast<std::size_t>(e)] = acc;
    }
    acc = {1.0, 0.0};
    const std::complex<double> zc = std::conj(z[d]);  // inverse on the unit circle
    for (std::int64_t e = -1; e >= lo; --e) {
      acc *= zc;
      t[static_cast<std::size_t>(e - lo)] = acc;
    }
  }
}

// Returns false when every specialized coefficient is below the side's pole
// threshold (the node must then be skipped).
bool eval_side(const Integrand& in, const CompiledSide& side, Scratch& s,
               std::vector<std::complex<double>>& c) {
  c.assign(side.ncoef, {0.0, 0.0});
  for (const CompiledTerm& t : side.terms) {
    std::complex<double> v = t.coeff;
    for (const auto& [d, e] : t.pows)
      v *= s.pw[d][static_cast<std::size_t>(e - in.tlo[d])];
    c[t.slot] += v;
  }
  for (const auto& x : c)
    if (std::abs(x) >= side.pole_eps) return true;
  return false;
}

// NaN marks a skipped node.
double node_value(const Integrand& in, Scratch& s, const std::complex<double>* z) {
  fill_powers(in, s, z);
  if (!eval_side(in, in.num, s, s.cnum) || !eval_side(in, in.den, s, s.cden))
    return std::numeric_limits<double>::quiet_NaN();
  if (in.reduced) {
    bool relaxed = false;
    double v = jensen_measure_1d(std::span<const std::complex<double>>(s.cnum), &relaxed) -
               jensen_measure_1d(std::span<const std::complex<double>>(s.cden), &relaxed);
    if (relaxed) s.relaxed = true;
    return v;
  }
  return std::log(std::abs(s.cnum[0])) - std::log(std::abs(s.cden[0]));
}

double pairwise_sum(const double* v, std::size_t n) {
  if (n <= 8) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += v[i];
    return s;
  }
  const std::size_t h = n / 2;
  return pairwise_sum(v, h) + pairwise_sum(v + h, n - h);
}

struct RunTotals {
  std::size_t used = 0;
  std::size_t skipped = 0;
  bool relaxed = false;
  std::string note;
};

// Evaluates `count` nodes into fixed slots, in parallel; the coordinate
// callback and the slot-indexed storage plus the serial pairwise reduction
// make the result independent of the worker count.
template <class Coord>
double run_nodes(const Integrand& in, std::size_t count, unsigned threads,
                 const Coord& coord, RunTotals& totals) {
  std::vector<double> vals(count, 0.0);
  std::vector<std::uint8_t> skip(count, 0);
  unsigned want = threads ? threads : std::max(1u, std::thread::hardware_concurrency());
  unsigned T = static_cast<unsigned>(
      std::min<std::size_t>(want, std::max<std::size_t>(count, 1)));
  std::vector<Scratch> scratch;
  scratch.reserve(T);
  for (unsigned w = 0; w < T; ++w) scratch.push_back(make_scratch(in));

  std::exception_ptr eptr;
  std::mutex emx;
  auto work = [&](unsigned w) {
    try {
      const std::size_t b = count * w / T;
      const std::size_t e = count * (w + 1) / T;
      Scratch& s = scratch[w];
      std::vector<std::complex<double>> z(in.dims.size());
      for (std::size_t i = b; i < e; ++i) {
        coord(i, z.data());
        double v;
        try {
          v = node_value(in, s, z.data());
        } catch (const NumericError& ex) {
          v = std::numeric_limits<double>::quiet_NaN();
          if (s.note.empty()) s.note = ex.what();
        }
        if (std::isnan(v))
          skip[i] = 1;
        else
          vals[i] = v;
      }
    } catch (...) {
      std::lock_guard<std::mutex> lk(emx);
      if (!eptr) eptr = std::current_exception();
    }
  };

  if (T <= 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(T);
    for (unsigned w = 0; w < T; ++w) pool.emplace_back(work, w);
    for (auto& th : pool) th.join();
  }
  if (eptr) std::rethrow_exception(eptr);

  std::size_t nskip = 0;
  for (std::size_t i = 0; i < count; ++i) nskip += skip[i];
  totals.skipped += nskip;
  totals.used += count - nskip;
  for (const Scratch& s : scratch) {
    totals.relaxed = totals.relaxed || s.relaxed;
    if (totals.note.empty() && !s.note.empty()) totals.note = s.note;
  }
  if (count == nskip) throw NumericError("all quadrature nodes were skipped");
  return pairwise_sum(vals.data(), count) / static_cast<double>(count - nskip);
}

double tensor_mean(const Integrand& in, std::size_t npd, unsigned threads,
                   RunTotals& totals) {
  const std::size_t dims = in.dims.size();
  std::size_t count = 1;
  for (std::size_t d = 0; d < dims; ++d) {
    if (count > kMaxTensorNodes / npd)
      throw NumericError("tensor grid too large");
    count *= npd;
  }
  std::vector<std::complex<double>> ring(npd);
  for (std::size_t j = 0; j < npd; ++j)
    ring[j] = std::polar(1.0, kTwoPi * (static_cast<double>(j) + 0.5) /
                                  static_cast<double>(npd));
  auto coord = [&](std::size_t i, std::complex<double>* z) {
    for (std::size_t d = dims; d-- > 0;) {
      z[d] = ring[i % npd];
      i /= npd;
    }
  };
  return run_nodes(in, count, threads, coord, totals);
}

void finish(MeasureResult& out, const RunTotals& totals) {
  out.nodes_used = totals.used;
  out.nodes_skipped = totals.skipped;
  out.relaxed_roots = totals.relaxed;
  out.note = totals.note;
  if (totals.skipped > 0 &&
      static_cast<double>(totals.skipped) >
          1e-3 * static_cast<double>(totals.used)) {
    out.degenerate_warning = true;
    if (!out.note.empty()) out.note += "; ";
    out.note += "skipped-node fraction exceeds 1e-3";
  }
}

MeasureResult tensor_run(const Integrand& in, const QuadConfig& cfg,
                         std::size_t auto_1d, const char* tag) {
  const std::size_t dims = in.dims.size();
  std::size_t npd = cfg.nodes_per_dim ? cfg.nodes_per_dim
                                      : (dims == 1 ? auto_1d : 1024);
  MeasureResult out;
  out.seed = cfg.seed;
  out.method = std::string(tag) + "+tensor";
  RunTotals totals;
  const double fine = tensor_mean(in, npd, cfg.threads, totals);
  const double coarse = tensor_mean(in, std::max<std::size_t>(npd / 2, 4),
                                    cfg.threads, totals);
  out.value = fine;
  out.stderr_est = std::abs(fine - coarse);
  finish(out, totals);
  return out;
}

MeasureResult lattice_run(const Integrand& in, const QuadConfig& cfg,
                          const char* tag) {
  if (cfg.shifts < 2)
    throw std::invalid_argument("lattice rule needs shifts >= 2");
  const std::size_t dims = in.dims.size();
  if (dims > kLatticeDims)
    throw NumericError("too many dimensions for the lattice table");
  const LatticeEntry& lat =
      pick_lattice(cfg.total_nodes ? cfg.total_nodes : 65537);
  const std::size_t n = lat.n;
  const std::size_t R = cfg.shifts;

  std::mt19937_64 rng(cfg.seed);
  std::vector<double> deltas(R * dims);
  for (auto& d : deltas)
    d = static_cast<double>(rng() >> 11) * 0x1.0p-53;

  MeasureResult out;
  out.seed = cfg.seed;
  out.method = std::string(tag) + "+lattice";
  RunTotals totals;
  std::vector<double> partials(R);
  for (std::size_t r = 0; r < R; ++r) {
    const double* delta = deltas.data() + r * dims;
    auto coord = [&](std::size_t i, std::complex<double>* z) {
      for (std::size_t d = 0; d < dims; ++d) {
        const std::uint64_t t =
            (static_cast<std::uint64_t>(i) * lat.z[d]) % n;
        double u = static_cast<double>(t) / static_cast<double>(n) + delta[d];
        u -= std::floor(u);
        z[d] = std::polar(1.0, kTwoPi * u);
      }
    };
    partials[r] = run_nodes(in, n, cfg.threads, coord, totals);
  }
  out.value = pairwise_sum(partials.data(), R) / static_cast<double>(R);
  out.stderr_est = estimate_error(partials);
  finish(out, totals);
  return out;
}

void validate_config(const QuadConfig& cfg) {
  if (cfg.nodes_per_dim != 0 && cfg.nodes_per_dim < 8)
    throw std::invalid_argument("nodes_per_dim must be at least 8");
  if (cfg.pole_epsilon < 0.0)
    throw std::invalid_argument("pole_epsilon must be non-negative");
}

MeasureResult exact_constant(const RationalFn& p, const QuadConfig& cfg) {
  MeasureResult out;
  out.seed = cfg.seed;
  out.method = "exact";
  out.nodes_used = 1;
  const double a = std::abs(p.num().constant_value().to_complex());
  const double b = std::abs(p.den().constant_value().to_complex());
  out.value = std::log(a) - std::log(b);
  return out;
}

std::string pick_reduction(const RationalFn& p, const std::string& requested) {
  const auto vars = p.variables();
  if (requested != "auto") {
    if (!p.num().uses(requested) && !p.den().uses(requested))
      throw std::invalid_argument("reduction variable '" + requested +
                                  "' does not occur in the function");
    return requested;
  }
  std::string best;
  std::int64_t best_span = -1;
  for (const auto& v : vars) {
    std::int64_t span = 0;
    if (p.num().uses(v))
      span = std::max(span, p.num().degree_in(v) - p.num().min_exponent_in(v));
    if (p.den().uses(v))
      span = std::max(span, p.den().degree_in(v) - p.den().min_exponent_in(v));
    if (best_span < 0 || span < best_span) {
      best_span = span;
      best = v;
    }
  }
  return best;
}

MeasureResult jensen_impl(const RationalFn& p, const QuadConfig& cfg,
                          bool force_lattice) {
  validate_config(cfg);
  if (p.num().is_zero()) throw NumericError("zero function");
  if (p.variables().empty()) return exact_constant(p, cfg);

  const std::string rv = pick_reduction(p, cfg.reduction_variable);
  const Integrand in = build_integrand(p, rv, cfg.pole_epsilon);
  const std::size_t dims = in.dims.size();

  if (dims == 0) {
    // Univariate: the Jensen evaluation is a single exact root computation.
    MeasureResult out;
    out.seed = cfg.seed;
    out.method = "exact_jensen";
    out.nodes_used = 1;
    Scratch s = make_scratch(in);
    if (!eval_side(in, in.num, s, s.cnum) || !eval_side(in, in.den, s, s.cden))
      throw NumericError("all quadrature nodes were skipped");
    bool relaxed = false;
    out.value =
        jensen_measure_1d(std::span<const std::complex<double>>(s.cnum), &relaxed) -
        jensen_measure_1d(std::span<const std::complex<double>>(s.cden), &relaxed);
    out.relaxed_roots = relaxed;
    return out;
  }
  if (!force_lattice && dims <= 2)
    return tensor_run(in, cfg, 16384, "jensen_reduced");
  return lattice_run(in, cfg, "jensen_reduced");
}

}  // namespace

MeasureResult measure_jensen_reduced(const RationalFn& p, const QuadConfig& cfg) {
  return jensen_impl(p, cfg, false);
}

MeasureResult measure_direct(const RationalFn& p, const QuadConfig& cfg) {
  validate_config(cfg);
  if (p.num().is_zero()) throw NumericError("zero function");
  if (p.variables().empty()) return exact_constant(p, cfg);
  const Integrand in = build_integrand(p, "", cfg.pole_epsilon);
  if (in.dims.size() <= 2) return tensor_run(in, cfg, 65536, "direct");
  return lattice_run(in, cfg, "direct");
}

MeasureResult measure(const RationalFn& p, const QuadConfig& cfg) {
  switch (cfg.method) {
    case QuadMethod::direct:
      return measure_direct(p, cfg);
    case QuadMethod::lattice_qmc: {
      validate_config(cfg);
      if (p.num().is_zero()) throw NumericError("zero function");
      if (p.variables().empty()) return exact_constant(p, cfg);
      return jensen_impl(p, cfg, true);
    }
    case QuadMethod::jensen_reduced:
    default:
      return measure_jensen_reduced(p, cfg);
  }
}

MeasureResult measure(const LaurentPoly& p, const QuadConfig& cfg) {
  return measure(RationalFn(p), cfg);
}

double estimate_error(std::span<const double> partials) {
  if (partials.size() < 2)
    throw std::invalid_argument("error estimate needs at least two partials");
  const double r = static_cast<double>(partials.size());
  double mean = 0.0;
  for (double v : partials) mean += v;
  mean /= r;
  double ss = 0.0;
  for (double v : partials) ss += (v - mean) * (v - mean);
  const double sd = std::sqrt(ss / (r - 1.0));
  return sd / std::sqrt(r);
}

VerifyReport verify_identity(const RationalFn& lhs, double rhs_value,
                             const QuadConfig& cfg, double abs_tol) {
  if (!std::isfinite(rhs_value))
    throw std::invalid_argument("reference value must be finite");
  VerifyReport rep;
  rep.measured = measure(lhs, cfg);
  rep.rhs_value = rhs_value;
  rep.difference = std::abs(rep.measured.value - rhs_value);
  rep.tolerance = std::max(3.0 * rep.measured.stderr_est, abs_tol);
  rep.pass = rep.difference <= rep.tolerance;
  return rep;
}

}  // namespace mahler
