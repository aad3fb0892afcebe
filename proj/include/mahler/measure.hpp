#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string>

#include "mahler/laurent.hpp"
#include "mahler/roots.hpp"

namespace mahler {

enum class QuadMethod {
  jensen_reduced,  // peel one variable off by Jensen's formula, integrate the rest
  direct,          // sample log|num| - log|den| on the full torus
  lattice_qmc,     // Jensen reduction with the lattice rule forced for the outer integral
};

struct QuadConfig {
  QuadMethod method = QuadMethod::jensen_reduced;
  std::size_t nodes_per_dim = 0;  // tensor rules; 0 = automatic
  std::size_t total_nodes = 0;    // lattice rule; 0 = automatic (rounded up to a table size)
  std::size_t shifts = 10;        // random shifts R for the lattice rule
  std::uint64_t seed = 0x9e3779b97f4a7c15ull;
  std::string reduction_variable = "auto";
  double pole_epsilon = 0.0;      // 0 = automatic: 1e-14 * max coefficient magnitude per side
  unsigned threads = 0;           // 0 = hardware concurrency
};

struct MeasureResult {
  double value = 0.0;          // nats
  double stderr_est = 0.0;     // estimated standard error, nats
  std::string method;          // e.g. "jensen_reduced+tensor"
  std::size_t nodes_used = 0;
  std::size_t nodes_skipped = 0;
  std::uint64_t seed = 0;
  bool degenerate_warning = false;  // nodes_skipped / nodes_used exceeded 1e-3
  bool relaxed_roots = false;       // some 1D root solve met only the relaxed residual
  std::string note;
};

// Dispatches on cfg.method; constants are evaluated exactly.
MeasureResult measure(const RationalFn& p, const QuadConfig& cfg = {});
MeasureResult measure(const LaurentPoly& p, const QuadConfig& cfg = {});

// Full-dimensional sampling of log|num(z)| - log|den(z)|.
MeasureResult measure_direct(const RationalFn& p, const QuadConfig& cfg = {});

// For each node y of the non-reduced torus, specializes num and den to
// univariate polynomials in the reduction variable and averages
// m_x(num(.,y)) - m_x(den(.,y)), computed from the specialized roots.
MeasureResult measure_jensen_reduced(const RationalFn& p, const QuadConfig& cfg = {});

// Sample standard deviation of shift-averages divided by sqrt(R); R >= 2.
double estimate_error(std::span<const double> partials);

struct VerifyReport {
  MeasureResult measured;
  double rhs_value = 0.0;
  double difference = 0.0;  // |measured.value - rhs_value|
  double tolerance = 0.0;   // max(3 * stderr, abs_tol)
  bool pass = false;
};

VerifyReport verify_identity(const RationalFn& lhs, double rhs_value,
                             const QuadConfig& cfg = {}, double abs_tol = 0.0);

}  // namespace mahler
