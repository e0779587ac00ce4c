#include "nner/deduction.hpp"

#include <cassert>
#include <functional>

namespace nner {

SearchSpace search_space_of(Algorithm alg) {
  switch (alg) {
    case Algorithm::SemiMarkov: return SearchSpace::NonNested;
    case Algorithm::CykNested: return SearchSpace::Nested;
    case Algorithm::QuadNested: return SearchSpace::RestrictedNested;
  }
  throw std::logic_error("bad algorithm");
}

Algorithm algorithm_of(SearchSpace space) {
  switch (space) {
    case SearchSpace::NonNested: return Algorithm::SemiMarkov;
    case SearchSpace::Nested: return Algorithm::CykNested;
    case SearchSpace::RestrictedNested: return Algorithm::QuadNested;
  }
  throw std::logic_error("bad search space");
}

std::string_view algorithm_name(Algorithm alg) {
  switch (alg) {
    case Algorithm::SemiMarkov: return "semi-markov";
    case Algorithm::CykNested: return "cyk";
    case Algorithm::QuadNested: return "quadratic";
  }
  return "?";
}

std::optional<Algorithm> parse_algorithm(std::string_view name) {
  if (name == "semi-markov") return Algorithm::SemiMarkov;
  if (name == "cyk") return Algorithm::CykNested;
  if (name == "quadratic") return Algorithm::QuadNested;
  return std::nullopt;
}

std::string item_to_string(const Item& item, const LabelSet* labels) {
  auto span = [&](std::string_view mark) {
    return "[" + std::string(mark) + ", " + std::to_string(item.i) + ", " +
           std::to_string(item.j) + "]";
  };
  switch (item.kind) {
    case ItemKind::RightState: return "[→, " + std::to_string(item.i) + "]";
    case ItemKind::PartialRight: return span("↦");
    case ItemKind::Complete: return span("↔");
    case ItemKind::PartialLeft: return span("↤");
    case ItemKind::Mention: {
      std::string name = labels != nullptr && item.label >= 0 && item.label < labels->size()
                             ? labels->name(item.label)
                             : "t" + std::to_string(item.label);
      return "[" + name + ", " + std::to_string(item.i) + ", " + std::to_string(item.j) + "]";
    }
  }
  return "?";
}

namespace {

constexpr ItemKind RS = ItemKind::RightState;
constexpr ItemKind PR = ItemKind::PartialRight;
constexpr ItemKind CO = ItemKind::Complete;
constexpr ItemKind PL = ItemKind::PartialLeft;
constexpr ItemKind ME = ItemKind::Mention;

}  // namespace

const std::vector<RuleInfo>& rule_table(Algorithm alg) {
  static const std::vector<RuleInfo> semi_markov = {
      {Rule::A, 2, {RS, ME}, RS, ""},
      {Rule::B, 1, {RS, RS}, RS, ""},
  };
  static const std::vector<RuleInfo> cyk = {
      {Rule::C, 2, {PR, CO}, PR, "i < k"},
      {Rule::D, 1, {PR, PR}, PR, ""},
      {Rule::E, 2, {CO, CO}, PR, "i < k < j"},
      {Rule::F, 1, {CO, CO}, PR, "i < j - 1"},
      {Rule::G, 2, {PR, ME}, CO, "i < j"},
      {Rule::H, 2, {RS, CO}, RS, ""},
      {Rule::I, 1, {RS, RS}, RS, ""},
  };
  static const std::vector<RuleInfo> quadratic = {
      {Rule::D, 1, {PR, PR}, PR, ""},
      {Rule::F, 1, {CO, CO}, PR, "i < j - 1"},
      {Rule::G, 2, {PR, ME}, CO, "i < j"},
      {Rule::H, 2, {RS, CO}, RS, ""},
      {Rule::I, 1, {RS, RS}, RS, ""},
      {Rule::J, 2, {PR, CO}, PR, "i < j - 1"},
      {Rule::K, 2, {CO, CO}, PR, "i < j - 1"},
      {Rule::L, 2, {CO, CO}, PL, "i + 2 < j"},
      {Rule::M, 1, {CO, CO}, PL, "i + 2 < j"},
      {Rule::N, 1, {PL, PL}, PL, "i + 1 < j"},
      {Rule::O, 2, {CO, PL}, PL, "i + 1 < j"},
      {Rule::P, 1, {PL, PL}, PR, ""},
  };
  switch (alg) {
    case Algorithm::SemiMarkov: return semi_markov;
    case Algorithm::CykNested: return cyk;
    case Algorithm::QuadNested: return quadratic;
  }
  throw std::logic_error("bad algorithm");
}

namespace {

struct AntecedentList {
  std::array<Item, 2> items;
  int count = 0;
};

// Reconstructs a rule instance's antecedents from its consequent plus the
// stored free variable (split point / start position) and label.
AntecedentList antecedents_of(Rule r, const Item& c, int arg, int label) {
  switch (r) {
    case Rule::A: return {{right_state_item(arg), mention_item(label, arg, c.j)}, 2};
    case Rule::B: return {{right_state_item(c.j - 1), Item{}}, 1};
    case Rule::C: return {{partial_right_item(c.i, arg), complete_item(arg, c.j)}, 2};
    case Rule::D: return {{partial_right_item(c.i, c.j - 1), Item{}}, 1};
    case Rule::E: return {{complete_item(c.i, arg), complete_item(arg, c.j)}, 2};
    case Rule::F: return {{complete_item(c.i, c.j - 1), Item{}}, 1};
    case Rule::G: return {{partial_right_item(c.i, c.j), mention_item(label, c.i, c.j)}, 2};
    case Rule::H: return {{right_state_item(arg), complete_item(arg, c.j)}, 2};
    case Rule::I: return {{right_state_item(c.j - 1), Item{}}, 1};
    case Rule::J: return {{partial_right_item(c.i, c.j - 1), complete_item(c.j - 1, c.j)}, 2};
    case Rule::K: return {{complete_item(c.i, c.j - 1), complete_item(c.j - 1, c.j)}, 2};
    case Rule::L: return {{complete_item(c.i, c.i + 1), complete_item(c.i + 1, c.j)}, 2};
    case Rule::M: return {{complete_item(c.i + 1, c.j), Item{}}, 1};
    case Rule::N: return {{partial_left_item(c.i + 1, c.j), Item{}}, 1};
    case Rule::O: return {{complete_item(c.i, c.i + 1), partial_left_item(c.i + 1, c.j)}, 2};
    case Rule::P: return {{partial_left_item(c.i, c.j), Item{}}, 1};
  }
  throw std::logic_error("bad rule");
}

bool is_axiom_item(const Item& it) {
  return it.kind == ItemKind::Mention || (it.kind == ItemKind::RightState && it.i == 0) ||
         (it.kind == ItemKind::PartialRight && it.i == it.j);
}

}  // namespace

namespace {

// Width offsets for the raw chart rows used by the Viterbi value kernels;
// matches SpanTable's width-major layout.
std::vector<std::size_t> width_offsets(int n, bool with_diagonal) {
  std::vector<std::size_t> offsets(static_cast<std::size_t>(n) + 2, 0);
  std::size_t size = 0;
  for (int w = with_diagonal ? 0 : 1; w <= n; ++w) {
    offsets[static_cast<std::size_t>(w)] = size;
    size += static_cast<std::size_t>(n + 1 - w);
  }
  return offsets;
}

inline double vmax(double a, double b) { return b > a ? b : a; }

// max_t w(t, i, j) per span. Because rounding is monotone,
// max_t fl(x + w_t) == fl(x + max_t w_t), so rule (g) can add the
// precomputed row maximum instead of looping over labels per cell.
std::vector<double> span_weight_max(int n, int num_labels, const WeightTable& w) {
  const auto off = width_offsets(n, false);
  std::vector<double> wmax(off[static_cast<std::size_t>(n)] +
                               (n >= 1 ? static_cast<std::size_t>(1) : 0),
                           kNegInf);
  if (num_labels == 0) return wmax;
  const double* cells = w.table().cells().data();
  const std::size_t labels = static_cast<std::size_t>(num_labels);
  for (std::size_t s = 0; s < wmax.size(); ++s) {
    double best = cells[s * labels];
    for (std::size_t t = 1; t < labels; ++t) best = vmax(best, cells[s * labels + t]);
    wmax[s] = best;
  }
  return wmax;
}

// The Viterbi value passes are written per algorithm over raw rows so that
// MAP decoding runs at the speed the complexity contract is about. They
// compute cell values only; the backtrace recovers the winning rule of each
// visited cell by re-enumerating its candidates with the generic engine.
// inside<MaxSemiring> must produce the same goal value.
void viterbi_fill_semi(int n, int num_labels, const WeightTable& w, Chart<double>& val) {
  const auto off = width_offsets(n, false);
  const std::vector<double> wmax = span_weight_max(n, num_labels, w);
  double* rs = val.right_state.data();
  rs[0] = 0.0;
  for (int p = 1; p <= n; ++p) {
    double best = rs[p - 1];  // rule (b)
    for (int start = 0; start < p; ++start) {
      best = vmax(best, rs[start] +
                            wmax[off[static_cast<std::size_t>(p - start)] +
                                 static_cast<std::size_t>(start)]);  // rule (a)
    }
    rs[p] = best;
  }
}

void right_state_sweep(int n, const std::vector<std::size_t>& off, const double* co, double* rs) {
  rs[0] = 0.0;
  for (int p = 1; p <= n; ++p) {
    double best = rs[p - 1];  // rule (i)
    for (int start = 0; start < p; ++start) {
      best = vmax(best, rs[start] + co[off[static_cast<std::size_t>(p - start)] +
                                       static_cast<std::size_t>(start)]);  // rule (h)
    }
    rs[p] = best;
  }
}

void viterbi_fill_cyk(int n, int num_labels, const WeightTable& w, Chart<double>& val) {
  const auto off_diag = width_offsets(n, true);
  const auto off = width_offsets(n, false);
  const std::vector<double> wmax = span_weight_max(n, num_labels, w);
  double* pr = val.partial_right.data();
  double* co = val.complete.data();
  for (int i = 0; i < n; ++i) pr[off_diag[0] + static_cast<std::size_t>(i)] = 0.0;

  for (int d = 1; d <= n; ++d) {
    double* pr_d = pr + off_diag[static_cast<std::size_t>(d)];
    const double* pr_prev = pr + off_diag[static_cast<std::size_t>(d - 1)];
    double* co_d = co + off[static_cast<std::size_t>(d)];
    const double* co_prev = d >= 2 ? co + off[static_cast<std::size_t>(d - 1)] : nullptr;
    const double* wmax_d = wmax.data() + off[static_cast<std::size_t>(d)];

    for (int i = 0; i + d <= n; ++i) {
      const int j = i + d;
      double best = pr_prev[i];                      // rule (d)
      if (d >= 2) best = vmax(best, co_prev[i]);     // rule (f)
      for (int k = i + 1; k < j; ++k) {              // rules (c) and (e)
        const double right =
            co[off[static_cast<std::size_t>(j - k)] + static_cast<std::size_t>(k)];
        best = vmax(best,
                    pr[off_diag[static_cast<std::size_t>(k - i)] + static_cast<std::size_t>(i)] +
                        right);
        best = vmax(best,
                    co[off[static_cast<std::size_t>(k - i)] + static_cast<std::size_t>(i)] +
                        right);
      }
      pr_d[i] = best;
    }
    for (int i = 0; i + d <= n; ++i) co_d[i] = pr_d[i] + wmax_d[i];  // rule (g)
  }
  right_state_sweep(n, off, co, val.right_state.data());
}

void viterbi_fill_quad(int n, int num_labels, const WeightTable& w, Chart<double>& val) {
  const auto off_diag = width_offsets(n, true);
  const auto off = width_offsets(n, false);
  const std::vector<double> wmax = span_weight_max(n, num_labels, w);
  double* pr = val.partial_right.data();
  double* co = val.complete.data();
  double* pl = val.partial_left.data();
  for (int i = 0; i < n; ++i) pr[off_diag[0] + static_cast<std::size_t>(i)] = 0.0;

  for (int d = 1; d <= n; ++d) {
    const double* co1 = co + off[1];
    double* pl_d = pl + off[static_cast<std::size_t>(d)];
    const double* pl_prev = d >= 2 ? pl + off[static_cast<std::size_t>(d - 1)] : nullptr;
    const double* co_prev = d >= 2 ? co + off[static_cast<std::size_t>(d - 1)] : nullptr;
    double* pr_d = pr + off_diag[static_cast<std::size_t>(d)];
    const double* pr_prev = pr + off_diag[static_cast<std::size_t>(d - 1)];
    double* co_d = co + off[static_cast<std::size_t>(d)];
    const double* wmax_d = wmax.data() + off[static_cast<std::size_t>(d)];

    if (d >= 3) {
      for (int i = 0; i + d <= n; ++i) {
        double best = vmax(co1[i] + co_prev[i + 1], co_prev[i + 1]);  // rules (l), (m)
        best = vmax(best, pl_prev[i + 1]);                            // rule (n)
        best = vmax(best, co1[i] + pl_prev[i + 1]);                   // rule (o)
        pl_d[i] = best;
      }
    } else if (d == 2) {
      for (int i = 0; i + d <= n; ++i) {
        pl_d[i] = vmax(pl_prev[i + 1], co1[i] + pl_prev[i + 1]);  // rules (n), (o)
      }
    }
    if (d >= 2) {
      for (int i = 0; i + d <= n; ++i) {
        const int j = i + d;
        double best = vmax(pr_prev[i], co_prev[i]);          // rules (d), (f)
        best = vmax(best, pr_prev[i] + co1[j - 1]);          // rule (j)
        best = vmax(best, co_prev[i] + co1[j - 1]);          // rule (k)
        best = vmax(best, pl_d[i]);                          // rule (p)
        pr_d[i] = best;
      }
    } else {
      for (int i = 0; i + d <= n; ++i) pr_d[i] = vmax(pr_prev[i], pl_d[i]);  // rules (d), (p)
    }
    for (int i = 0; i + d <= n; ++i) co_d[i] = pr_d[i] + wmax_d[i];  // rule (g)
  }
  right_state_sweep(n, off, co, val.right_state.data());
}

struct RecoveredStep {
  Rule rule = Rule::A;
  int arg = -1;
  int label = -1;
};

// Finds the first candidate (canonical rule/split/label order) whose value
// reproduces the cell value. The kernels and this recomputation perform the
// same IEEE operations on the same operands, so comparison is exact; rule
// (g) relies on the monotonicity of rounding noted at span_weight_max.
RecoveredStep recover_step(Algorithm alg, const WeightTable& w, const Chart<double>& val,
                           const Item& cell) {
  const double target = val.value(cell);
  auto in_value = [&](const Item& a) -> double {
    if (a.kind == ItemKind::Mention) return w.get(a.label, a.i, a.j);
    return val.value(a);
  };
  RecoveredStep found;
  bool done = false;
  detail::for_each_instance(
      alg, w.num_labels(), cell.kind, cell.i, cell.j,
      detail::overloaded{
          [&](Rule r, const Item& a) {
            if (done || in_value(a) != target) return;
            found = RecoveredStep{r, a.i, -1};
            done = true;
          },
          [&](Rule r, const Item& a, const Item& b) {
            if (done || in_value(a) + in_value(b) != target) return;
            const bool mention = b.kind == ItemKind::Mention;
            found = RecoveredStep{r, mention ? a.i : b.i, mention ? b.label : -1};
            done = true;
          }});
  if (!done) throw std::logic_error("viterbi backtrace failed to recover a derivation step");
  return found;
}

}  // namespace

DecodeResult viterbi_decode(Algorithm alg, const WeightTable& w) {
  const int n = w.length();
  const int num_labels = w.num_labels();
  Chart<double> val = detail::make_chart<double>(alg, n, num_labels, kNegInf, false);
  switch (alg) {
    case Algorithm::SemiMarkov: viterbi_fill_semi(n, num_labels, w, val); break;
    case Algorithm::CykNested: viterbi_fill_cyk(n, num_labels, w, val); break;
    case Algorithm::QuadNested: viterbi_fill_quad(n, num_labels, w, val); break;
  }

  DecodeResult result;
  result.score = val.goal();

  std::vector<Mention> mentions;
  std::function<std::int32_t(const Item&)> emit = [&](const Item& it) -> std::int32_t {
    if (is_axiom_item(it)) {
      if (it.kind == ItemKind::Mention) mentions.push_back(Mention{it.label, it.i, it.j});
      result.trace.steps.push_back(TraceStep{std::nullopt, it, {{-1, -1}}, 0});
      return static_cast<std::int32_t>(result.trace.steps.size()) - 1;
    }
    const RecoveredStep rec = recover_step(alg, w, val, it);
    const AntecedentList ants = antecedents_of(rec.rule, it, rec.arg, rec.label);
    TraceStep step{rec.rule, it, {{-1, -1}}, ants.count};
    for (int k = 0; k < ants.count; ++k)
      step.antecedent_steps[static_cast<std::size_t>(k)] =
          emit(ants.items[static_cast<std::size_t>(k)]);
    result.trace.steps.push_back(step);
    return static_cast<std::int32_t>(result.trace.steps.size()) - 1;
  };
  emit(right_state_item(n));

  result.analysis = Analysis(std::move(mentions));
  return result;
}

std::array<std::uint64_t, 16> DerivationTrace::rule_histogram() const {
  std::array<std::uint64_t, 16> hist{};
  for (const TraceStep& step : steps) {
    if (step.rule.has_value()) ++hist[static_cast<std::size_t>(*step.rule)];
  }
  return hist;
}

namespace {

// Code-point count; the item markers are multi-byte but single-column.
std::size_t display_width(const std::string& s) {
  std::size_t w = 0;
  for (unsigned char c : s) {
    if ((c & 0xC0) != 0x80) ++w;
  }
  return w;
}

}  // namespace

std::string format_trace(const DerivationTrace& trace, const LabelSet* labels) {
  std::vector<std::string> items;
  std::size_t item_width = 0;
  for (const TraceStep& step : trace.steps) {
    items.push_back(item_to_string(step.item, labels));
    item_width = std::max(item_width, display_width(items.back()));
  }
  std::string out;
  for (std::size_t s = 0; s < trace.steps.size(); ++s) {
    const TraceStep& step = trace.steps[s];
    std::string line = std::to_string(s + 1) + ".";
    while (line.size() < 5) line.insert(0, " ");
    line += " " + items[s];
    for (std::size_t pad = display_width(items[s]); pad < item_width + 2; ++pad) line += ' ';
    if (!step.rule.has_value()) {
      line += "Axiom";
    } else {
      line += "(";
      line += rule_letter(*step.rule);
      line += ")";
      if (step.num_antecedents >= 1) {
        line += " with " + std::to_string(step.antecedent_steps[0] + 1);
        if (step.num_antecedents == 2)
          line += " and " + std::to_string(step.antecedent_steps[1] + 1);
      }
    }
    out += line;
    out += '\n';
  }
  return out;
}

InstanceCounts enumerate_rule_instances(Algorithm alg, int n, int num_labels) {
  if (n < 0) throw std::invalid_argument("sentence length must be >= 0");
  InstanceCounts counts;
  detail::for_each_cell(alg, n, false, [&](ItemKind kind, int i, int j) {
    detail::for_each_instance(
        alg, num_labels, kind, i, j,
        detail::overloaded{
            [&](Rule r, const Item&) { ++counts.by_rule[static_cast<std::size_t>(r)]; },
            [&](Rule r, const Item&, const Item&) { ++counts.by_rule[static_cast<std::size_t>(r)]; }});
  });
  return counts;
}

std::uint64_t InstanceCounts::total() const {
  std::uint64_t sum = 0;
  for (std::uint64_t c : by_rule) sum += c;
  return sum;
}

}  // namespace nner
