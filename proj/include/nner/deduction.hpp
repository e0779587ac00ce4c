#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "nner/core.hpp"
#include "nner/semiring.hpp"
#include "nner/span_table.hpp"
#include "nner/weights.hpp"

namespace nner {

enum class Algorithm { SemiMarkov, CykNested, QuadNested };

SearchSpace search_space_of(Algorithm alg);
Algorithm algorithm_of(SearchSpace space);
std::string_view algorithm_name(Algorithm alg);  // "semi-markov" | "cyk" | "quadratic"
std::optional<Algorithm> parse_algorithm(std::string_view name);

// Deduction rules (a)-(p). Which subset applies depends on the algorithm:
//   SemiMarkov:  a, b
//   CykNested:   c, d, e, f, g, h, i
//   QuadNested:  d, f, g, h, i, j, k, l, m, n, o, p
enum class Rule : std::uint8_t { A, B, C, D, E, F, G, H, I, J, K, L, M, N, O, P };

constexpr char rule_letter(Rule r) { return static_cast<char>('a' + static_cast<int>(r)); }

enum class ItemKind : std::uint8_t {
  RightState,    // [→, i]    prefix analysis covering words 0..i
  PartialRight,  // [↦, i, j] partial mention structure grown rightward
  Complete,      // [↔, i, j] fully analyzed mention over (i, j)
  PartialLeft,   // [↤, i, j] partial structure grown leftward from a child
  Mention,       // [t, i, j] weighted mention axiom
};

struct Item {
  ItemKind kind = ItemKind::RightState;
  std::int32_t i = 0;
  std::int32_t j = 0;
  std::int32_t label = -1;  // Mention only

  friend bool operator==(const Item&, const Item&) = default;
};

constexpr Item right_state_item(int p) { return Item{ItemKind::RightState, p, p, -1}; }
constexpr Item partial_right_item(int i, int j) { return Item{ItemKind::PartialRight, i, j, -1}; }
constexpr Item complete_item(int i, int j) { return Item{ItemKind::Complete, i, j, -1}; }
constexpr Item partial_left_item(int i, int j) { return Item{ItemKind::PartialLeft, i, j, -1}; }
constexpr Item mention_item(int label, int i, int j) { return Item{ItemKind::Mention, i, j, label}; }

std::string item_to_string(const Item& item, const LabelSet* labels = nullptr);

// Static description of one rule schema, used for documentation, the trace
// printer and inventory tests. The chart passes use the (equivalent)
// hard-scheduled loops below.
struct RuleInfo {
  Rule id;
  int arity;
  std::array<ItemKind, 2> antecedents;
  ItemKind consequent;
  const char* side_condition;  // empty string if none
};

const std::vector<RuleInfo>& rule_table(Algorithm alg);

namespace detail {

template <class... Fs>
struct overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
overloaded(Fs...) -> overloaded<Fs...>;

// Visits every derived chart cell in schedule order: widths ascending, within
// a width PartialLeft then PartialRight then Complete, ascending left border;
// RightState positions last, left to right. `reverse` visits the exact mirror
// order (used by the outside pass). Axiom cells ([→,0], [↦,i,i], mentions)
// are not derived and are not visited.
template <typename F>
void for_each_cell(Algorithm alg, int n, bool reverse, F&& f) {
  const bool spans = alg != Algorithm::SemiMarkov;
  const bool left = alg == Algorithm::QuadNested;
  if (!reverse) {
    if (spans) {
      for (int d = 1; d <= n; ++d) {
        if (left)
          for (int i = 0; i + d <= n; ++i) f(ItemKind::PartialLeft, i, i + d);
        for (int i = 0; i + d <= n; ++i) f(ItemKind::PartialRight, i, i + d);
        for (int i = 0; i + d <= n; ++i) f(ItemKind::Complete, i, i + d);
      }
    }
    for (int p = 1; p <= n; ++p) f(ItemKind::RightState, p, p);
  } else {
    for (int p = n; p >= 1; --p) f(ItemKind::RightState, p, p);
    if (spans) {
      for (int d = n; d >= 1; --d) {
        for (int i = n - d; i >= 0; --i) f(ItemKind::Complete, i, i + d);
        for (int i = n - d; i >= 0; --i) f(ItemKind::PartialRight, i, i + d);
        if (left)
          for (int i = n - d; i >= 0; --i) f(ItemKind::PartialLeft, i, i + d);
      }
    }
  }
}

// Enumerates the rule instances whose consequent is the cell (kind, i, j),
// in canonical order: rule id ascending, then split point, then label. Calls
// f(rule, antecedent) or f(rule, antecedent, antecedent). Instances are
// enumerated from index bounds and side conditions alone; whether the
// antecedent cells are derivable does not matter (underivable cells hold
// semiring zero).
template <typename F>
void for_each_instance(Algorithm alg, int num_labels, ItemKind kind, int i, int j, F&& f) {
  switch (kind) {
    case ItemKind::RightState: {
      const int p = j;
      if (alg == Algorithm::SemiMarkov) {
        for (int start = 0; start < p; ++start)
          for (int t = 0; t < num_labels; ++t)
            f(Rule::A, right_state_item(start), mention_item(t, start, p));
        f(Rule::B, right_state_item(p - 1));
      } else {
        for (int start = 0; start < p; ++start)
          f(Rule::H, right_state_item(start), complete_item(start, p));
        f(Rule::I, right_state_item(p - 1));
      }
      break;
    }
    case ItemKind::PartialRight: {
      if (alg == Algorithm::CykNested) {
        for (int k = i + 1; k < j; ++k) f(Rule::C, partial_right_item(i, k), complete_item(k, j));
        f(Rule::D, partial_right_item(i, j - 1));
        for (int k = i + 1; k < j; ++k) f(Rule::E, complete_item(i, k), complete_item(k, j));
        if (i < j - 1) f(Rule::F, complete_item(i, j - 1));
      } else {
        f(Rule::D, partial_right_item(i, j - 1));
        if (i < j - 1) {
          f(Rule::F, complete_item(i, j - 1));
          f(Rule::J, partial_right_item(i, j - 1), complete_item(j - 1, j));
          f(Rule::K, complete_item(i, j - 1), complete_item(j - 1, j));
        }
        f(Rule::P, partial_left_item(i, j));
      }
      break;
    }
    case ItemKind::Complete: {
      for (int t = 0; t < num_labels; ++t)
        f(Rule::G, partial_right_item(i, j), mention_item(t, i, j));
      break;
    }
    case ItemKind::PartialLeft: {
      if (i + 2 < j) {
        f(Rule::L, complete_item(i, i + 1), complete_item(i + 1, j));
        f(Rule::M, complete_item(i + 1, j));
      }
      if (i + 1 < j) {
        f(Rule::N, partial_left_item(i + 1, j));
        f(Rule::O, complete_item(i, i + 1), partial_left_item(i + 1, j));
      }
      break;
    }
    case ItemKind::Mention:
      break;
  }
}

}  // namespace detail

// One semiring pass over a sentence: per-item-kind triangular value tables.
// `mention` is populated by outside passes only (per-axiom outside values).
template <typename V>
struct Chart {
  Algorithm algorithm = Algorithm::SemiMarkov;
  int n = 0;
  int num_labels = 0;
  std::vector<V> right_state;
  SpanTable<V> partial_right;  // includes the diagonal axiom cells
  SpanTable<V> complete;
  SpanTable<V> partial_left;  // QuadNested only
  std::vector<V> mention;     // label-major, same layout as LabelSpanTable

  const V& goal() const { return right_state[static_cast<std::size_t>(n)]; }

  V& value(const Item& it) {
    switch (it.kind) {
      case ItemKind::RightState: return right_state[static_cast<std::size_t>(it.i)];
      case ItemKind::PartialRight: return partial_right.at(it.i, it.j);
      case ItemKind::Complete: return complete.at(it.i, it.j);
      case ItemKind::PartialLeft: return partial_left.at(it.i, it.j);
      case ItemKind::Mention:
        return mention[static_cast<std::size_t>(it.label) * complete.size() +
                       complete.index(it.i, it.j)];
    }
    throw std::logic_error("bad item kind");
  }
  const V& value(const Item& it) const { return const_cast<Chart*>(this)->value(it); }

  bool operator==(const Chart&) const = default;
};

namespace detail {

template <typename V>
Chart<V> make_chart(Algorithm alg, int n, int num_labels, const V& zero, bool with_mentions) {
  Chart<V> ch;
  ch.algorithm = alg;
  ch.n = n;
  ch.num_labels = num_labels;
  ch.right_state.assign(static_cast<std::size_t>(n) + 1, zero);
  if (alg != Algorithm::SemiMarkov) {
    ch.partial_right = SpanTable<V>(n, /*with_diagonal=*/true, zero);
    ch.complete = SpanTable<V>(n, /*with_diagonal=*/false, zero);
    if (alg == Algorithm::QuadNested) ch.partial_left = SpanTable<V>(n, false, zero);
  }
  if (with_mentions) {
    ch.mention.assign(static_cast<std::size_t>(num_labels) *
                          SpanTable<V>(n, false, zero).size(),
                      zero);
  }
  return ch;
}

}  // namespace detail

// Inside pass: each derived cell accumulates, over the rule instances that
// produce it, the semiring product of its antecedent values; axiom cells are
// seeded with one (or lift(w) for mentions, read on the fly). The goal cell
// [→,n] then holds the semiring sum over all derivations. n = 0 degenerates
// to goal = one.
template <Semiring S>
Chart<typename S::Value> inside(Algorithm alg, const WeightTable& w) {
  using V = typename S::Value;
  const int n = w.length();
  const int num_labels = w.num_labels();
  Chart<V> ch = detail::make_chart<V>(alg, n, num_labels, S::zero(), false);
  ch.right_state[0] = S::one();
  if (alg != Algorithm::SemiMarkov) {
    // [↦,i,i] axioms; [↦,n,n] is never consumed and stays zero.
    for (int i = 0; i < n; ++i) ch.partial_right.at(i, i) = S::one();
  }

  auto in_value = [&](const Item& a) -> V {
    if (a.kind == ItemKind::Mention) return S::lift(w.get(a.label, a.i, a.j));
    return ch.value(a);
  };

  detail::for_each_cell(alg, n, false, [&](ItemKind kind, int i, int j) {
    V acc = S::zero();
    detail::for_each_instance(
        alg, num_labels, kind, i, j,
        detail::overloaded{
            [&](Rule, const Item& a) { acc = S::plus(acc, in_value(a)); },
            [&](Rule, const Item& a, const Item& b) {
              acc = S::plus(acc, S::times(in_value(a), in_value(b)));
            }});
    ch.value(Item{kind, i, j, -1}) = acc;
  });
  return ch;
}

// Outside pass: outside(goal) = one; every rule instance propagates
// outside(consequent) ⊗ inside(other antecedents) down to each antecedent,
// visiting cells in exact reverse schedule order. Mention-axiom outside
// values land in `mention`.
template <Semiring S>
Chart<typename S::Value> outside(Algorithm alg, const WeightTable& w,
                                 const Chart<typename S::Value>& inside_chart) {
  using V = typename S::Value;
  const int n = w.length();
  const int num_labels = w.num_labels();
  if (inside_chart.algorithm != alg || inside_chart.n != n ||
      inside_chart.num_labels != num_labels) {
    throw std::invalid_argument("outside: inside chart does not match algorithm/weights");
  }
  Chart<V> out = detail::make_chart<V>(alg, n, num_labels, S::zero(), true);
  out.right_state[static_cast<std::size_t>(n)] = S::one();

  auto in_value = [&](const Item& a) -> V {
    if (a.kind == ItemKind::Mention) return S::lift(w.get(a.label, a.i, a.j));
    return inside_chart.value(a);
  };
  auto add_out = [&](const Item& a, const V& v) { out.value(a) = S::plus(out.value(a), v); };

  detail::for_each_cell(alg, n, true, [&](ItemKind kind, int i, int j) {
    const V oc = out.value(Item{kind, i, j, -1});
    detail::for_each_instance(
        alg, num_labels, kind, i, j,
        detail::overloaded{
            [&](Rule, const Item& a) { add_out(a, oc); },
            [&](Rule, const Item& a, const Item& b) {
              add_out(a, S::times(oc, in_value(b)));
              add_out(b, S::times(oc, in_value(a)));
            }});
  });
  return out;
}

// A derivation replay: every step's antecedents appear earlier in the
// sequence, and the final step derives the goal.
struct TraceStep {
  std::optional<Rule> rule;  // nullopt = axiom
  Item item;
  std::array<std::int32_t, 2> antecedent_steps{{-1, -1}};  // 0-based indices
  int num_antecedents = 0;
};

struct DerivationTrace {
  std::vector<TraceStep> steps;

  bool operator==(const DerivationTrace&) const = default;
  std::array<std::uint64_t, 16> rule_histogram() const;
};

// Three-column rendering in the style of a recognition-trace table.
std::string format_trace(const DerivationTrace& trace, const LabelSet* labels = nullptr);

struct DecodeResult {
  double score = 0.0;
  Analysis analysis;
  DerivationTrace trace;
};

// Max-plus pass with backpointers followed by a goal-rooted replay. Ties are
// broken toward the lexicographically smallest (rule id, split point, label),
// so decoding is deterministic. The empty analysis (score 0) is always
// available via the skip rules.
DecodeResult viterbi_decode(Algorithm alg, const WeightTable& w);

struct InstanceCounts {
  std::array<std::uint64_t, 16> by_rule{};

  std::uint64_t of(Rule r) const { return by_rule[static_cast<std::size_t>(r)]; }
  std::uint64_t total() const;
};

// Exact number of (rule, index binding) instances honoring side conditions;
// the total is the work measure behind the complexity contracts.
InstanceCounts enumerate_rule_instances(Algorithm alg, int n, int num_labels = 1);

}  // namespace nner
