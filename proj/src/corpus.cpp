#include "phwell/corpus.hpp"

#include <cmath>
#include <cstdio>

#include "phwell/error.hpp"
#include "phwell/halfline_checker.hpp"

namespace phwell {

CMatrix truncated_shift(int d) {
  CMatrix L = CMatrix::Zero(d, d);
  for (int i = 0; i + 1 < d; ++i) L(i, i + 1) = 1.0;
  return L;
}

CMatrix truncated_tree_operator(int d) {
  CMatrix T = CMatrix::Zero(d, d);
  for (int i = 1; i <= d; ++i) {
    for (int child : {2 * i + 1, 2 * i + 2}) {
      if (child <= d) T(i - 1, child - 1) = -0.5;
    }
  }
  return T;
}

namespace {

SystemDescription unit_network(int d) {
  SystemDescription raw;
  raw.field = Field::real;
  raw.interval = IntervalKind::unit_interval;
  raw.order_N = 1;
  raw.dim_d = d;
  raw.P = {CMatrix::Zero(d, d), CMatrix::Identity(d, d)};
  raw.H = HamiltonianDensity::constant(CMatrix::Identity(d, d));
  return raw;
}

}  // namespace

PortHamiltonianSystem build_path_graph(int d_edges) {
  if (d_edges < 2) throw Error(ErrorKind::validation, "a path graph needs at least two edges", "d");
  SystemDescription raw = unit_network(d_edges);
  raw.WB_hat.resize(d_edges, 2 * d_edges);
  raw.WB_hat << CMatrix::Identity(d_edges, d_edges), -truncated_shift(d_edges);
  return validate_system(raw);
}

PortHamiltonianSystem build_binary_tree(int levels) {
  if (levels < 2) throw Error(ErrorKind::validation, "a binary tree needs at least two levels", "levels");
  const int d = (1 << (levels + 1)) - 2;
  SystemDescription raw = unit_network(d);
  raw.WB_hat.resize(d, 2 * d);
  raw.WB_hat << CMatrix::Identity(d, d), truncated_tree_operator(d);
  return validate_system(raw);
}

PortHamiltonianSystem build_wave(IntervalKind kind, Complex u, double rho, double T) {
  SystemDescription raw;
  raw.field = u.imag() != 0.0 ? Field::complex : Field::real;
  raw.interval = kind;
  raw.order_N = 1;
  raw.dim_d = 2;
  CMatrix P1(2, 2);
  P1 << 0.0, 1.0, 1.0, 0.0;
  raw.P = {CMatrix::Zero(2, 2), P1};
  CMatrix H = CMatrix::Zero(2, 2);
  H(0, 0) = 1.0 / rho;
  H(1, 1) = T;
  raw.H = HamiltonianDensity::constant(H);
  if (kind == IntervalKind::half_line) {
    raw.WB_hat.resize(1, 2);
    raw.WB_hat << 0.5 * (u - 1.0), 0.5 * (u + 1.0);
  } else {
    raw.WB_hat = CMatrix::Zero(2, 4);
    raw.WB_hat(0, 0) = u;
    raw.WB_hat(0, 1) = 1.0;
    raw.WB_hat(1, 2) = 1.0;
  }
  return validate_system(raw);
}

PortHamiltonianSystem build_transport(double p1, double a, double b) {
  SystemDescription raw;
  raw.field = Field::real;
  raw.interval = IntervalKind::unit_interval;
  raw.order_N = 1;
  raw.dim_d = 1;
  raw.P = {CMatrix::Zero(1, 1), CMatrix::Constant(1, 1, p1)};
  raw.H = HamiltonianDensity::constant(CMatrix::Identity(1, 1));
  raw.WB_hat.resize(1, 2);
  raw.WB_hat << a, b;
  return validate_system(raw);
}

PortHamiltonianSystem build_halfline_sign(int d, double sign, const CMatrix& wb_hat) {
  SystemDescription raw;
  raw.field = Field::real;
  raw.interval = IntervalKind::half_line;
  raw.order_N = 1;
  raw.dim_d = d;
  raw.P = {CMatrix::Zero(d, d), sign * CMatrix::Identity(d, d)};
  raw.H = HamiltonianDensity::constant(CMatrix::Identity(d, d));
  raw.WB_hat = wb_hat;
  return validate_system(raw);
}

std::string_view to_string(ExpectationBasis b) {
  switch (b) {
    case ExpectationBasis::worked_example: return "worked_example";
    case ExpectationBasis::hand_derivation: return "hand_derivation";
    case ExpectationBasis::direct_evaluation: return "direct_evaluation";
  }
  return "direct_evaluation";
}

const std::vector<CorpusEntry>& corpus() {
  static const std::vector<CorpusEntry> entries = [] {
    using C = Consensus;
    using U = UnitaryConsensus;
    using B = ExpectationBasis;
    const std::string truncation =
        "finite truncation of an infinite network; verdicts of the l2 operator may differ";
    std::vector<CorpusEntry> e;
    for (int d : {2, 8, 32}) {
      e.push_back({"path_graph_d" + std::to_string(d), "d_edges=" + std::to_string(d),
                   [d] { return build_path_graph(d); }, C::contraction, U::not_unitary, B::worked_example,
                   truncation});
    }
    for (int l : {2, 3}) {
      e.push_back({"binary_tree_l" + std::to_string(l), "levels=" + std::to_string(l),
                   [l] { return build_binary_tree(l); }, C::contraction, U::not_unitary, B::worked_example,
                   truncation});
    }
    struct WaveCase {
      const char* name;
      Complex u;
      C c;
      U un;
    };
    const WaveCase waves[] = {
        {"wave_halfline_u0", {0.0, 0.0}, C::contraction, U::not_unitary},
        {"wave_halfline_u05", {0.5, 0.0}, C::contraction, U::not_unitary},
        {"wave_halfline_u1", {1.0, 0.0}, C::contraction, U::unitary},
        {"wave_halfline_um1", {-1.0, 0.0}, C::contraction, U::unitary},
        {"wave_halfline_u09i", {0.0, 0.9}, C::contraction, U::not_unitary},
        {"wave_halfline_u101", {1.01, 0.0}, C::not_contraction, U::not_unitary},
        {"wave_halfline_u2", {2.0, 0.0}, C::not_contraction, U::not_unitary},
        {"wave_halfline_um3", {-3.0, 0.0}, C::not_contraction, U::not_unitary},
    };
    for (const auto& w : waves) {
      const Complex u = w.u;
      char params[64];
      std::snprintf(params, sizeof params, "u=%g%+gi", u.real(), u.imag());
      e.push_back({w.name, params, [u] { return build_wave(IntervalKind::half_line, u); }, w.c, w.un,
                   B::hand_derivation, "generation iff 1-|u|^2 >= 0, unitary iff |u| = 1"});
    }
    e.push_back({"wave_damper_k07", "k=0.7", [] { return build_wave(IntervalKind::unit_interval, 0.7); },
                 C::contraction, U::not_unitary, B::hand_derivation, "clamped at 0, damper at 1"});
    e.push_back({"wave_damper_km07", "k=-0.7", [] { return build_wave(IntervalKind::unit_interval, -0.7); },
                 C::not_contraction, U::not_unitary, B::hand_derivation, "damper with the wrong sign"});
    e.push_back({"transport_inflow", "P1=-1, x(0)=0", [] { return build_transport(-1.0, 0.0, 1.0); },
                 C::contraction, U::not_unitary, B::direct_evaluation, "zero inflow at zeta = 0"});
    e.push_back({"transport_wrong_end", "P1=1, x(0)=0", [] { return build_transport(1.0, 0.0, 1.0); },
                 C::not_contraction, U::not_unitary, B::direct_evaluation, "condition imposed at the outflow end"});
    e.push_back({"transport_periodic", "P1=1, x(1)=x(0)", [] { return build_transport(1.0, 1.0, -1.0); },
                 C::contraction, U::unitary, B::direct_evaluation, "periodic transport"});
    e.push_back({"halfline_negative_dirichlet", "P1=-I_2, W_B=I",
                 [] { return build_halfline_sign(2, -1.0, CMatrix::Identity(2, 2)); }, C::contraction,
                 U::conservative_only, B::worked_example, "all characteristics enter at zeta = 0"});
    e.push_back({"halfline_positive_free", "P1=I_2, k=0",
                 [] { return build_halfline_sign(2, 1.0, CMatrix(0, 2)); }, C::contraction, U::not_unitary,
                 B::worked_example, "no boundary condition needed"});
    return e;
  }();
  return entries;
}

const CorpusEntry* find_corpus_entry(const std::string& name) {
  for (const auto& e : corpus()) {
    if (e.name == name) return &e;
  }
  return nullptr;
}

CorpusOutcome run_corpus_entry(const CorpusEntry& entry) {
  CorpusOutcome out;
  out.name = entry.name;
  out.verdict = analyze(entry.build());
  const bool c_ok = out.verdict.consensus == entry.expected_consensus;
  const bool u_ok = out.verdict.unitary == entry.expected_unitary;
  out.passed = c_ok && u_ok && !out.verdict.discrepancy;
  if (!c_ok) {
    out.message += "consensus " + std::string(to_string(out.verdict.consensus)) + ", expected " +
                   std::string(to_string(entry.expected_consensus)) + ". ";
  }
  if (!u_ok) {
    out.message += "unitary " + std::string(to_string(out.verdict.unitary)) + ", expected " +
                   std::string(to_string(entry.expected_unitary)) + ". ";
  }
  if (out.verdict.discrepancy) out.message += "equivalent conditions disagree.";
  return out;
}

}  // namespace phwell
