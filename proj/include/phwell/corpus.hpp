#pragma once

// Builders for the network, wave and transport examples and the named corpus
// with expected verdicts. Infinite networks are truncated: the shift becomes
// a nilpotent d x d matrix with a zero last row, and tree rows whose children
// fall outside the truncation become zero (absorbing leaf edges).

#include <functional>
#include <string>
#include <vector>

#include "phwell/model.hpp"
#include "phwell/verdict.hpp"

namespace phwell {

/// d x d shift with L e_i = e_{i-1} (ones on the superdiagonal).
CMatrix truncated_shift(int d);

/// Tree coupling T_d: row i (1-based) carries -1/2 at columns 2i+1 and 2i+2 when present.
CMatrix truncated_tree_operator(int d);

/// N = 1, P1 = I, P0 = 0, H = I, W_B_hat = [I, -L_d]. Requires d_edges >= 2.
PortHamiltonianSystem build_path_graph(int d_edges);

/// d = 2^(levels+1) - 2 edges, W_B_hat = [I, T_d]. Requires levels >= 2.
PortHamiltonianSystem build_binary_tree(int levels);

/// Wave equation in first-order form: P1 = [[0,1],[1,0]], H = diag(1/rho, T).
/// half_line: W_B_hat = 1/2 [u-1, u+1]. unit_interval: clamped end at zeta = 0
/// and damper u at zeta = 1, W_B_hat = [[u, 1, 0, 0], [0, 0, 1, 0]].
/// The field is complex when u has a nonzero imaginary part.
PortHamiltonianSystem build_wave(IntervalKind kind, Complex u, double rho = 1.0, double T = 1.0);

/// Scalar transport x_t = p1 (x)_zeta on [0,1] with W_B_hat = [a, b] acting on [x(1); x(0)].
PortHamiltonianSystem build_transport(double p1, double a, double b);

/// Half-line system with P1 = sign * I_d, P0 = 0, H = I, and the given boundary rows.
PortHamiltonianSystem build_halfline_sign(int d, double sign, const CMatrix& wb_hat);

enum class ExpectationBasis {
  worked_example,   ///< verdict stated for the untruncated example
  hand_derivation,  ///< derived by hand from the conditions
  direct_evaluation ///< follows from evaluating the trace conditions directly
};

std::string_view to_string(ExpectationBasis b);

struct CorpusEntry {
  std::string name;
  std::string parameters;
  std::function<PortHamiltonianSystem()> build;
  Consensus expected_consensus;
  UnitaryConsensus expected_unitary;
  ExpectationBasis basis;
  std::string note;
};

const std::vector<CorpusEntry>& corpus();
const CorpusEntry* find_corpus_entry(const std::string& name);

struct CorpusOutcome {
  std::string name;
  bool passed = false;
  Verdict verdict;
  std::string message;
};

CorpusOutcome run_corpus_entry(const CorpusEntry& entry);

}  // namespace phwell
