#include "hecke/length.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <unordered_map>

#include "hecke/errors.hpp"
#include "hecke/pair.hpp"

namespace hecke {

namespace {

/// Lazily expanded 0-1 BFS over G: layer k is W_k = H (S H)^k minus W_{k-1}.
class WordLengthMemo {
 public:
  WordLengthMemo(GeneratingSet gens, std::vector<GroupElement> free, std::size_t budget)
      : gens_(std::move(gens)), free_(std::move(free)), budget_(budget) {
    if (gens_.elements.empty()) throw std::invalid_argument("word length needs generators");
    const GroupElement one = identity(gens_.elements.front().backend());
    if (std::find(free_.begin(), free_.end(), one) == free_.end()) free_.push_back(one);
    for (const auto& h : free_) {
      if (dist_.emplace(h, 0).second) frontier_.push_back(h);
    }
  }

  int lookup(const GroupElement& g) {
    std::lock_guard lock(mutex_);
    for (;;) {
      if (auto it = dist_.find(g); it != dist_.end()) return it->second;
      if (frontier_.empty()) throw std::invalid_argument("element is not in the generated group");
      expand();
    }
  }

  const GeneratingSet& gens() const { return gens_; }
  const std::vector<GroupElement>& free() const { return free_; }

 private:
  void expand() {
    ++depth_;
    std::vector<GroupElement> next;
    for (const auto& x : frontier_)
      for (const auto& s : gens_.elements) {
        const GroupElement xs = mul(x, s);
        for (const auto& h : free_) {
          GroupElement y = mul(xs, h);
          if (dist_.emplace(y, depth_).second) {
            if (dist_.size() > budget_)
              throw BudgetExceeded("word length search exceeded budget", dist_.size());
            next.push_back(std::move(y));
          }
        }
      }
    frontier_ = std::move(next);
  }

  GeneratingSet gens_;
  std::vector<GroupElement> free_;
  std::size_t budget_;
  std::mutex mutex_;
  std::unordered_map<GroupElement, int, GroupElementHash> dist_;
  std::vector<GroupElement> frontier_;
  int depth_ = 0;
};

double one_norm(const MatrixElement& m) {
  double best = 0;
  for (int c = 0; c < m.dim; ++c) {
    Rational s = 0;
    for (int r = 0; r < m.dim; ++r) s += abs(m.at(r, c));
    best = std::max(best, to_double(s));
  }
  return best;
}

MatrixElement as_matrix_form(const GroupElement& g) {
  if (g.backend() == Backend::affine) {
    const auto& a = g.as_affine();
    return MatrixElement{2, {1, a.shift, 0, a.scale}};
  }
  if (g.backend() == Backend::dihedral) {
    const auto& d = g.as_dihedral();
    return MatrixElement{2, {d.sign, d.shift, 0, 1}};
  }
  return g.as_matrix();
}

}  // namespace

struct LengthFunction::State {
  Kind kind;
  std::string name;
  Evaluator eval;
  bool integral;
  bool locally_finite;
  std::shared_ptr<WordLengthMemo> memo;
};

LengthFunction LengthFunction::word_length(GeneratingSet gens, std::vector<GroupElement> free_subgroup,
                                           std::size_t budget) {
  if (!gens.symmetric) gens = GeneratingSet::symmetric_closure(std::move(gens.elements));
  auto memo = std::make_shared<WordLengthMemo>(std::move(gens), std::move(free_subgroup), budget);
  auto eval = [memo](const GroupElement& g) { return static_cast<double>(memo->lookup(g)); };
  const bool finite_balls = true;
  return LengthFunction(std::make_shared<const State>(
      State{Kind::word_length, "word", std::move(eval), true, finite_balls, memo}));
}

LengthFunction LengthFunction::matrix_log_norm() {
  auto eval = [](const GroupElement& g) {
    const double v = std::log(one_norm(as_matrix_form(g)) * one_norm(as_matrix_form(inv(g))));
    return v < 0 ? 0.0 : v;
  };
  return LengthFunction(std::make_shared<const State>(
      State{Kind::matrix_log_norm, "matrix-log-norm", std::move(eval), false, false, nullptr}));
}

LengthFunction LengthFunction::dihedral_abs() {
  auto eval = [](const GroupElement& g) {
    return static_cast<double>(std::llabs(g.as_dihedral().shift));
  };
  return LengthFunction(std::make_shared<const State>(
      State{Kind::dihedral_abs, "dihedral-abs", std::move(eval), true, true, nullptr}));
}

LengthFunction LengthFunction::zero(bool locally_finite) {
  auto eval = [](const GroupElement&) { return 0.0; };
  return LengthFunction(std::make_shared<const State>(
      State{Kind::zero, "zero", std::move(eval), true, locally_finite, nullptr}));
}

LengthFunction LengthFunction::custom(std::string name, Evaluator fn, bool integral,
                                      bool locally_finite) {
  return LengthFunction(std::make_shared<const State>(
      State{Kind::custom, std::move(name), std::move(fn), integral, locally_finite, nullptr}));
}

double LengthFunction::operator()(const GroupElement& g) const { return state_->eval(g); }
LengthFunction::Kind LengthFunction::kind() const { return state_->kind; }
const std::string& LengthFunction::name() const { return state_->name; }
bool LengthFunction::integral() const { return state_->integral; }
bool LengthFunction::locally_finite() const { return state_->locally_finite; }

LengthFunction LengthFunction::with_locally_finite(bool flag) const {
  auto s = std::make_shared<State>(*state_);
  s->locally_finite = flag;
  return LengthFunction(std::move(s));
}

const GeneratingSet& LengthFunction::generators() const {
  if (!state_->memo) throw Unsupported("length '" + name() + "' has no generating set");
  return state_->memo->gens();
}

const std::vector<GroupElement>& LengthFunction::free_subgroup() const {
  if (!state_->memo) throw Unsupported("length '" + name() + "' has no generating set");
  return state_->memo->free();
}

std::string to_string(LengthFunction::Kind kind) {
  switch (kind) {
    case LengthFunction::Kind::word_length: return "word-length";
    case LengthFunction::Kind::matrix_log_norm: return "matrix-log-norm";
    case LengthFunction::Kind::dihedral_abs: return "dihedral-abs";
    case LengthFunction::Kind::zero: return "zero";
    case LengthFunction::Kind::custom: return "custom";
  }
  return "unknown";
}

LengthReport validate_length(const LengthFunction& length, const HeckePair& pair,
                             const std::vector<GroupElement>& sample) {
  if (sample.empty()) throw std::invalid_argument("validate_length needs a nonempty sample");
  LengthReport report;
  report.length_name = length.name();
  report.sample_size = sample.size();

  const bool exact = length.integral();
  auto slack = [&](double ref) { return exact ? 0.0 : 1e-9 * (1.0 + std::abs(ref)); };
  auto add = [&](std::string axiom, std::vector<GroupElement> w, double lhs, double rhs) {
    report.violations.push_back({std::move(axiom), std::move(w), lhs, rhs});
  };

  std::vector<double> values;
  values.reserve(sample.size());
  for (const auto& g : sample) values.push_back(length(g));

  const GroupElement one = identity(pair.backend());
  ++report.checks;
  if (const double l1 = length(one); std::abs(l1) > slack(0)) add("identity", {one}, l1, 0);

  for (std::size_t i = 0; i < sample.size(); ++i) {
    ++report.checks;
    const double li = length(inv(sample[i]));
    if (std::abs(li - values[i]) > slack(values[i])) add("symmetry", {sample[i]}, values[i], li);
  }

  for (std::size_t i = 0; i < sample.size(); ++i)
    for (std::size_t j = 0; j < sample.size(); ++j) {
      ++report.checks;
      const double lhs = length(mul(sample[i], sample[j]));
      const double rhs = values[i] + values[j];
      if (lhs > rhs + slack(rhs)) add("subadditivity", {sample[i], sample[j]}, lhs, rhs);
    }

  const auto hs = pair.subgroup_sample();
  for (const auto& h : hs) {
    ++report.checks;
    if (const double lh = length(h); std::abs(lh) > slack(0)) add("vanishing-on-H", {h}, lh, 0);
  }
  for (std::size_t i = 0; i < sample.size(); ++i)
    for (const auto& h1 : hs)
      for (const auto& h2 : {hs.front(), hs.back()}) {
        ++report.checks;
        const double l = length(mul(mul(h1, sample[i]), h2));
        if (std::abs(l - values[i]) > slack(values[i]))
          add("double-coset-constancy", {sample[i], h1, h2}, l, values[i]);
      }
  return report;
}

}  // namespace hecke
