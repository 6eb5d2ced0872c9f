#include "reflection_oracle.hpp"

#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>

namespace oracle {

Representation::Representation(const coxvis::CoxeterSystem& sys) : n_(sys.rank()) {
  for (coxvis::GenIndex s = 0; s < n_; ++s) {
    std::vector<double> m = identity();
    for (coxvis::GenIndex t = 0; t < n_; ++t) {
      double b = 1.0;
      if (s != t) {
        const auto order = sys.order(s, t);
        b = order == coxvis::kInfiniteOrder ? -1.0 : -std::cos(std::numbers::pi / order);
      }
      // column t: α_t − 2B(s,t)α_s
      m[s * n_ + t] -= 2 * b;
    }
    gens_.push_back(std::move(m));
  }
}

std::vector<double> Representation::identity() const {
  std::vector<double> m(n_ * n_, 0.0);
  for (std::size_t i = 0; i < n_; ++i) m[i * n_ + i] = 1.0;
  return m;
}

std::vector<double> Representation::product(const std::vector<double>& a, const std::vector<double>& b) const {
  std::vector<double> c(n_ * n_, 0.0);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t k = 0; k < n_; ++k) {
      const double x = a[i * n_ + k];
      if (x == 0.0) continue;
      for (std::size_t j = 0; j < n_; ++j) c[i * n_ + j] += x * b[k * n_ + j];
    }
  return c;
}

std::vector<double> Representation::times_generator(const std::vector<double>& m, coxvis::GenIndex s) const {
  return product(m, gens_[s]);
}

std::vector<double> Representation::evaluate(const Word& w) const {
  std::vector<double> m = identity();
  for (auto s : w) m = times_generator(m, s);
  return m;
}

Representation::Key Representation::key(const std::vector<double>& m) {
  Key k;
  k.reserve(m.size());
  for (double x : m) k.push_back(std::llround(x * 1e6));
  return k;
}

IntegerRepresentation::IntegerRepresentation(const coxvis::CoxeterSystem& sys)
    : n_(sys.rank()), twice_b_(n_ * n_, 2) {
  for (coxvis::GenIndex s = 0; s < n_; ++s)
    for (coxvis::GenIndex t = 0; t < n_; ++t) {
      if (s == t) continue;
      const auto order = sys.order(s, t);
      if (order != 2 && order != 3 && order != coxvis::kInfiniteOrder)
        throw std::invalid_argument("integer representation needs labels 2, 3 or infinity");
      twice_b_[s * n_ + t] = order == 2 ? 0 : order == 3 ? -1 : -2;
    }
}

IntegerRepresentation::Matrix IntegerRepresentation::evaluate(const Word& w) const {
  Matrix m(n_ * n_, 0);
  for (std::size_t i = 0; i < n_; ++i) m[i * n_ + i] = 1;
  // Right multiplication by s only changes column s: e_t ↦ e_t − 2B(s,t)e_s.
  for (auto s : w)
    for (std::size_t i = 0; i < n_; ++i) {
      const auto x = m[i * n_ + s];
      if (x == 0) continue;
      for (std::size_t t = 0; t < n_; ++t)
        if (t != s) m[i * n_ + t] -= x * twice_b_[s * n_ + t];
      m[i * n_ + s] = -x;
    }
  return m;
}

Ball::Ball(const coxvis::CoxeterSystem& sys, GeneratorSubset a, std::optional<std::size_t> radius, std::size_t cap)
    : sys_(&sys), rep_(sys), gens_(a) {
  words_.push_back({});
  mats_.push_back(rep_.identity());
  index_.emplace(Representation::key(mats_[0]), 0);
  std::size_t layer_begin = 0;
  for (std::size_t len = 0;; ++len) {
    const std::size_t layer_end = words_.size();
    if (layer_begin == layer_end) {
      complete_ = true;
      return;
    }
    if (radius && len == *radius) {
      // complete only if nothing new lies one step further
      for (std::size_t i = layer_begin; i < layer_end; ++i)
        for (auto s : gens_.members())
          if (!index_.contains(Representation::key(rep_.times_generator(mats_[i], s)))) return;
      complete_ = true;
      return;
    }
    for (std::size_t i = layer_begin; i < layer_end; ++i) {
      for (auto s : gens_.members()) {
        auto m = rep_.times_generator(mats_[i], s);
        auto k = Representation::key(m);
        if (index_.contains(k)) continue;
        if (words_.size() >= cap) throw std::runtime_error("oracle ball cap exceeded");
        index_.emplace(std::move(k), words_.size());
        Word w = words_[i];
        w.push_back(s);
        words_.push_back(std::move(w));
        mats_.push_back(std::move(m));
      }
    }
    layer_begin = layer_end;
  }
}

Word Ball::concat(const Word& a, const Word& b) {
  Word w = a;
  w.insert(w.end(), b.begin(), b.end());
  return w;
}

std::optional<std::size_t> Ball::find(const Word& w) const {
  const auto it = index_.find(Representation::key(rep_.evaluate(w)));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t Ball::index(const Word& w) const {
  if (auto i = find(w)) return *i;
  throw std::out_of_range("word outside the enumerated ball");
}

std::size_t Ball::inverse(std::size_t i) const {
  Word w(words_[i].rbegin(), words_[i].rend());
  return index(w);
}

std::vector<Word> Ball::geodesics(std::size_t i) const {
  if (words_[i].empty()) return {Word{}};
  std::vector<Word> out;
  for (auto s : gens_.members()) {
    const auto prev = find(concat(words_[i], {s}));
    if (!prev || length(*prev) + 1 != length(i)) continue;
    for (Word w : geodesics(*prev)) {
      w.push_back(s);
      out.push_back(std::move(w));
    }
  }
  return out;
}

std::vector<std::size_t> closure(const Ball& g, const std::vector<std::size_t>& generators) {
  std::set<std::size_t> seen{0};
  std::vector<std::size_t> frontier{0};
  while (!frontier.empty()) {
    std::vector<std::size_t> next;
    for (std::size_t x : frontier)
      for (std::size_t y : generators) {
        const std::size_t z = g.multiply(x, y);
        if (seen.insert(z).second) next.push_back(z);
      }
    frontier = std::move(next);
  }
  return {seen.begin(), seen.end()};
}

std::vector<std::size_t> conjugate(const Ball& g, std::size_t x, const std::vector<std::size_t>& h) {
  std::set<std::size_t> out;
  const std::size_t xi = g.inverse(x);
  for (std::size_t y : h) out.insert(g.multiply(g.multiply(x, y), xi));
  return {out.begin(), out.end()};
}

}  // namespace oracle
