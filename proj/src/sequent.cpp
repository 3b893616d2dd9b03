#include "uip/sequent.hpp"

#include <algorithm>
#include <set>

namespace uip {

namespace {

auto lower(std::vector<FormulaMultiset::Entry>& entries, const Formula& f) {
  return std::lower_bound(entries.begin(), entries.end(), f,
                          [](const FormulaMultiset::Entry& e, const Formula& g) {
                            return compare(e.first, g) < 0;
                          });
}

auto lower(const std::vector<FormulaMultiset::Entry>& entries, const Formula& f) {
  return std::lower_bound(entries.begin(), entries.end(), f,
                          [](const FormulaMultiset::Entry& e, const Formula& g) {
                            return compare(e.first, g) < 0;
                          });
}

}  // namespace

FormulaMultiset::FormulaMultiset(std::initializer_list<Formula> items) {
  for (const auto& f : items) add(f);
}

FormulaMultiset::FormulaMultiset(const std::vector<Formula>& items) {
  for (const auto& f : items) add(f);
}

void FormulaMultiset::add(const Formula& f, std::size_t times) {
  if (times == 0) return;
  auto it = lower(entries_, f);
  if (it != entries_.end() && it->first == f) {
    it->second += times;
  } else {
    entries_.insert(it, Entry{f, times});
  }
  size_ += times;
}

bool FormulaMultiset::remove_one(const Formula& f) {
  auto it = lower(entries_, f);
  if (it == entries_.end() || !(it->first == f)) return false;
  if (--it->second == 0) entries_.erase(it);
  --size_;
  return true;
}

std::size_t FormulaMultiset::remove_all(const Formula& f) {
  auto it = lower(entries_, f);
  if (it == entries_.end() || !(it->first == f)) return 0;
  const std::size_t n = it->second;
  entries_.erase(it);
  size_ -= n;
  return n;
}

std::size_t FormulaMultiset::count(const Formula& f) const {
  auto it = lower(entries_, f);
  if (it == entries_.end() || !(it->first == f)) return 0;
  return it->second;
}

std::vector<Formula> FormulaMultiset::expanded() const {
  std::vector<Formula> out;
  out.reserve(size_);
  for (const auto& [f, n] : entries_)
    for (std::size_t i = 0; i < n; ++i) out.push_back(f);
  return out;
}

const Formula& FormulaMultiset::at(std::size_t position) const {
  for (const auto& [f, n] : entries_) {
    if (position < n) return f;
    position -= n;
  }
  throw std::out_of_range("multiset position out of range");
}

std::size_t FormulaMultiset::position_of(const Formula& f) const {
  std::size_t pos = 0;
  for (const auto& [g, n] : entries_) {
    if (g == f) return pos;
    pos += n;
  }
  return size_;
}

std::size_t FormulaMultiset::weight() const {
  std::size_t w = 0;
  for (const auto& [f, n] : entries_) w += n * f.raw_weight();
  return w;
}

std::size_t FormulaMultiset::hash() const noexcept {
  std::size_t h = 0xcbf29ce484222325ULL;
  for (const auto& [f, n] : entries_) {
    h ^= f.hash() + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h ^= n + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

FormulaMultiset& FormulaMultiset::operator+=(const FormulaMultiset& other) {
  for (const auto& [f, n] : other.entries_) add(f, n);
  return *this;
}

std::strong_ordering operator<=>(const FormulaMultiset& a, const FormulaMultiset& b) {
  const std::size_t n = std::min(a.entries_.size(), b.entries_.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (auto c = compare(a.entries_[i].first, b.entries_[i].first); c != 0) return c;
    if (auto c = a.entries_[i].second <=> b.entries_[i].second; c != 0) return c;
  }
  return a.entries_.size() <=> b.entries_.size();
}

TSequent::TSequent(FormulaMultiset s, FormulaMultiset a, FormulaMultiset d)
    : store(std::move(s)), antecedent(std::move(a)), succedent(std::move(d)) {}

std::size_t SequentHash::operator()(const Sequent& s) const noexcept {
  return s.antecedent.hash() * 31 + s.succedent.hash();
}

std::size_t SequentHash::operator()(const TSequent& s) const noexcept {
  return (s.store.hash() * 31 + s.antecedent.hash()) * 31 + s.succedent.hash();
}

FormulaMultiset flats(const FormulaMultiset& ms, AgentId agent) {
  FormulaMultiset out;
  for (const auto& [f, n] : ms)
    if (f.is_boxed(agent)) out.add(f.sub(), n);
  return out;
}

bool is_critical(const Sequent& s) {
  auto ok = [](const FormulaMultiset& side) {
    return std::all_of(side.begin(), side.end(),
                       [](const auto& e) { return e.first.is_critical_member(); });
  };
  return ok(s.antecedent) && ok(s.succedent);
}

bool is_first_order(const FormulaMultiset& ms) {
  return std::none_of(ms.begin(), ms.end(), [](const auto& e) { return e.first.has_quantifier(); });
}

bool is_first_order(const Sequent& s) {
  return is_first_order(s.antecedent) && is_first_order(s.succedent);
}

std::size_t sequent_weight(const Sequent& s) {
  return s.antecedent.weight() + s.succedent.weight();
}

std::size_t box_count(const FormulaMultiset& ms) {
  std::set<Formula> boxes;
  for (const auto& [f, n] : ms) collect_boxed_subformulas(f, boxes);
  return boxes.size();
}

Measure measure(const TSequent& s) {
  std::set<Formula> boxes;
  for (const auto* side : {&s.store, &s.antecedent, &s.succedent})
    for (const auto& [f, n] : *side) collect_boxed_subformulas(f, boxes);
  return {boxes.size(), s.antecedent.weight() + s.succedent.weight()};
}

}  // namespace uip
