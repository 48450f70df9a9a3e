#pragma once

// The beta-shift as a finite deterministic automaton built from d*_beta(1),
// word counts, the connecting order and the Parry (max-entropy) measure.

#include "pisot/algebraic.hpp"
#include "pisot/expansion.hpp"
#include "pisot/word.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace pisot {

// State q means: the longest suffix read so far that is a prefix of
// d*_beta(1) has length q (lengths >= preperiod + period fold back).
struct ShiftAutomaton {
  static constexpr int kReject = -1;

  int alphabet_size = 0;
  int initial = 0;
  int preperiod = 0;
  int period = 0;
  std::vector<std::vector<int>> transitions;  // [state][digit] -> state or kReject

  int num_states() const { return static_cast<int>(transitions.size()); }
  // Next state; kReject for a digit outside the alphabet as well.
  int step(int state, Digit digit) const;
};

ShiftAutomaton build_automaton(const ExpansionOfOne& one);

// Throws Error(AlphabetViolation) for a digit outside the alphabet.
bool is_admissible(const Word& word, const ShiftAutomaton& automaton);

struct WordCounts {
  BigInt words;       // |L_n|
  BigInt cumulative;  // |L'_n| = sum_{nu <= n} |L_nu|
};
// Throws Error(InvalidArgument) for n < 1.
WordCounts count_words(const ShiftAutomaton& automaton, int n);
// |L_1| .. |L_n| in one pass.
std::vector<WordCounts> count_words_upto(const ShiftAutomaton& automaton, int n);

// Constants c1 <= c2 with c1 beta^n <= |L_n| <= c2 beta^n on [n_lo, n_hi].
struct GrowthConstants {
  int n_lo = 0, n_hi = 0;
  double c1 = 0, c2 = 0;
};
GrowthConstants growth_constants(const ShiftAutomaton& automaton, const PisotNumber& base, int n_lo, int n_hi);

// Smallest j with every state sent to the initial state by 0^j.
int connecting_order(const ShiftAutomaton& automaton);

// Max-entropy Markov chain on the automaton graph.
class ParryChain {
public:
  // Throws Error(EigenFailure) if power iteration does not converge or the
  // Perron eigenvalue disagrees with beta.
  ParryChain(const ShiftAutomaton& automaton, const PisotNumber& base, double tolerance = 1e-14,
             long max_iterations = 1000000);

  double eigenvalue() const { return lambda_; }
  const std::vector<double>& right() const { return right_; }
  const std::vector<double>& left() const { return left_; }
  const std::vector<double>& stationary() const { return pi_; }
  // Probability of following `digit` out of `state` (0 if rejected).
  double edge_probability(int state, Digit digit) const;
  // Cylinder measure; 0 for inadmissible words, 1 for the empty word.
  double mu(const Word& word) const;
  const ShiftAutomaton& automaton() const { return automaton_; }

private:
  ShiftAutomaton automaton_;
  double lambda_ = 0;
  std::vector<double> right_, left_, pi_;
};

struct MeasureTable {
  std::map<Word, double> values;
  std::string method = "perron-power-iteration";
  double eigenvalue = 0;
  // max over covered lengths k of |sum_{|w| = k} mu(w) - 1|
  double normalization_error = 0;
};

// Throws Error(Inadmissible) if a requested word is not admissible.
MeasureTable parry_measure(const ShiftAutomaton& automaton, const PisotNumber& base, const std::vector<Word>& words);
MeasureTable parry_measure(const ParryChain& chain, const std::vector<Word>& words);

// All admissible words of length exactly k, lexicographic order.
std::vector<Word> admissible_words(const ShiftAutomaton& automaton, int k);
// All admissible words of length 1..k_max, by length then lexicographic.
std::vector<Word> admissible_words_upto(const ShiftAutomaton& automaton, int k_max);

double entropy(const ShiftAutomaton& automaton, const PisotNumber& base);

// JSON {states, initial, alphabet_size, preperiod, period, transitions}.
std::string automaton_json(const ShiftAutomaton& automaton);
// CSV with header "word,mu"; mu printed with 15 significant digits.
std::string measure_csv(const MeasureTable& table, int alphabet_size);

}  // namespace pisot
