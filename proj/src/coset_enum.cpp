#include "dpgrad/coset_enum.hpp"

#include <algorithm>

#include "dpgrad/errors.hpp"

namespace dpgrad {

namespace {

using Col = std::uint32_t;
constexpr std::int32_t kUndef = -1;

struct TableFull {};

class Enumerator {
 public:
  Enumerator(const Presentation& p, const std::vector<Word>& subgroup,
             const EnumerationOptions& opt)
      : ncols_(2 * p.rank()), max_(opt.max_cosets), lookahead_(opt.lookahead) {
    for (const auto& r : p.relators()) rels_.push_back(columns(cyclic_reduce(r)));
    for (const auto& w : subgroup) {
      auto c = columns(free_reduce(w));
      if (!c.empty()) subgens_.push_back(std::move(c));
    }
    if (max_ == 0) throw Overflow(max_);
    new_coset();
  }

  void run() {
    std::size_t start = 0;
    guarded(start, [&] {
      for (const auto& w : subgens_) scan_and_fill(0, w);
    });
    for (std::size_t a = 0; a < used_; ++a) {
      if (!alive(a)) continue;
      guarded(a, [&] {
        for (const auto& r : rels_) {
          scan_and_fill(a, r);
          if (!alive(a)) return;
        }
        for (Col c = 0; c < ncols_; ++c)
          if (cell(a, c) == kUndef) define(a, c);
      });
      if (a >= used_) break;
    }
    compact();
  }

  CosetTable result(const Presentation& p, const std::vector<Word>& subgroup) {
    CosetTable t;
    t.presentation = p;
    t.subgroup_words = subgroup;
    t.cosets = used_;
    t.table = std::move(table_);
    t.table.resize(used_ * ncols_);
    t.complete = true;
    t.total_defined = total_;
    return t;
  }

 private:
  std::vector<Col> columns(const Word& w) const {
    std::vector<Col> out;
    out.reserve(w.size());
    for (Letter x : w) {
      const auto c = static_cast<Col>(letter_column(x));
      if (c >= ncols_) throw DomainError("word uses a generator beyond the rank");
      out.push_back(c);
    }
    return out;
  }

  std::int32_t& cell(std::size_t a, Col c) { return table_[a * ncols_ + c]; }
  bool alive(std::size_t a) const { return parent_[a] == static_cast<std::int32_t>(a); }

  // Runs step on coset a, making room with a lookahead pass whenever the
  // table fills up. Scans are idempotent, so an interrupted step is simply
  // repeated. Compaction renumbers a in place.
  template <class Step>
  void guarded(std::size_t& a, Step step) {
    while (true) {
      try {
        step();
        return;
      } catch (const TableFull&) {
        if (!lookahead_) throw Overflow(max_);
        a = make_room(a);
        if (a >= used_) return;
      }
    }
  }

  std::size_t new_coset() {
    if (used_ >= max_) {
      if (used_ == 0) throw Overflow(max_);
      throw TableFull{};
    }
    const std::size_t b = used_++;
    ++total_;
    if (table_.size() < used_ * ncols_) table_.resize(std::max(used_ * ncols_, table_.size() * 2), kUndef);
    std::fill_n(table_.begin() + static_cast<std::ptrdiff_t>(b * ncols_), ncols_, kUndef);
    if (parent_.size() < used_) parent_.resize(used_);
    parent_[b] = static_cast<std::int32_t>(b);
    return b;
  }

  void define(std::size_t a, Col c) {
    const std::size_t b = new_coset();
    cell(a, c) = static_cast<std::int32_t>(b);
    cell(b, c ^ 1) = static_cast<std::int32_t>(a);
  }

  std::size_t rep(std::size_t k) {
    std::size_t r = k;
    while (parent_[r] != static_cast<std::int32_t>(r)) r = static_cast<std::size_t>(parent_[r]);
    while (parent_[k] != static_cast<std::int32_t>(r)) {
      const auto next = static_cast<std::size_t>(parent_[k]);
      parent_[k] = static_cast<std::int32_t>(r);
      k = next;
    }
    return r;
  }

  void merge(std::size_t k, std::size_t l) {
    const std::size_t a = rep(k), b = rep(l);
    if (a == b) return;
    const std::size_t lo = std::min(a, b), hi = std::max(a, b);
    parent_[hi] = static_cast<std::int32_t>(lo);
    queue_.push_back(hi);
  }

  void coincidence(std::size_t a, std::size_t b) {
    queue_.clear();
    merge(a, b);
    for (std::size_t i = 0; i < queue_.size(); ++i) {
      const std::size_t g = queue_[i];
      for (Col c = 0; c < ncols_; ++c) {
        const std::int32_t d = cell(g, c);
        if (d == kUndef) continue;
        const auto du = static_cast<std::size_t>(d);
        if (cell(du, c ^ 1) == static_cast<std::int32_t>(g)) cell(du, c ^ 1) = kUndef;
        const std::size_t mu = rep(g), nu = rep(du);
        if (cell(mu, c) != kUndef) {
          merge(nu, static_cast<std::size_t>(cell(mu, c)));
        } else if (cell(nu, c ^ 1) != kUndef) {
          merge(mu, static_cast<std::size_t>(cell(nu, c ^ 1)));
        } else {
          cell(mu, c) = static_cast<std::int32_t>(nu);
          cell(nu, c ^ 1) = static_cast<std::int32_t>(mu);
        }
      }
    }
    queue_.clear();
  }

  // Scans w from coset a in both directions; with `fill` set, gaps are
  // bridged by defining new cosets.
  void scan(std::size_t a, const std::vector<Col>& w, bool fill) {
    if (w.empty()) return;
    std::size_t f = a, b = a;
    std::ptrdiff_t i = 0, j = static_cast<std::ptrdiff_t>(w.size()) - 1;
    while (true) {
      while (i <= j && cell(f, w[static_cast<std::size_t>(i)]) != kUndef)
        f = static_cast<std::size_t>(cell(f, w[static_cast<std::size_t>(i++)]));
      if (i > j) {
        if (f != a) coincidence(f, a);
        return;
      }
      while (j >= i && cell(b, w[static_cast<std::size_t>(j)] ^ 1) != kUndef)
        b = static_cast<std::size_t>(cell(b, w[static_cast<std::size_t>(j--)] ^ 1));
      if (j < i) {
        coincidence(f, b);
        return;
      }
      if (i == j) {
        const Col c = w[static_cast<std::size_t>(i)];
        cell(f, c) = static_cast<std::int32_t>(b);
        cell(b, c ^ 1) = static_cast<std::int32_t>(f);
        return;
      }
      if (!fill) return;
      define(f, w[static_cast<std::size_t>(i)]);
    }
  }

  void scan_and_fill(std::size_t a, const std::vector<Col>& w) { scan(a, w, true); }

  // Lookahead pass followed by compaction. Returns the new position of the
  // first live coset at or after a.
  std::size_t make_room(std::size_t a) {
    const std::size_t before = live_count();
    for (std::size_t b = 0; b < used_; ++b) {
      for (const auto& r : rels_) {
        if (!alive(b)) break;
        scan(b, r, false);
      }
    }
    const auto newpos = compact();
    const std::size_t freed = before - used_;
    std::size_t na = used_;
    for (std::size_t k = a; k < newpos.size(); ++k)
      if (newpos[k] != kUndef) {
        na = static_cast<std::size_t>(newpos[k]);
        break;
      }
    if (freed == 0 || freed < max_ / 50) throw Overflow(max_);
    return na;
  }

  std::size_t live_count() const {
    std::size_t n = 0;
    for (std::size_t b = 0; b < used_; ++b) n += alive(b);
    return n;
  }

  // Renumbers live cosets consecutively, keeping their order.
  std::vector<std::int32_t> compact() {
    std::vector<std::int32_t> pos(used_, kUndef);
    std::size_t n = 0;
    for (std::size_t b = 0; b < used_; ++b)
      if (alive(b)) pos[b] = static_cast<std::int32_t>(n++);
    for (std::size_t b = 0; b < used_; ++b) {
      if (pos[b] == kUndef) continue;
      const auto nb = static_cast<std::size_t>(pos[b]);
      for (Col c = 0; c < ncols_; ++c) {
        const std::int32_t v = cell(b, c);
        table_[nb * ncols_ + c] = v == kUndef ? kUndef : pos[rep(static_cast<std::size_t>(v))];
      }
    }
    used_ = n;
    for (std::size_t b = 0; b < used_; ++b) parent_[b] = static_cast<std::int32_t>(b);
    return pos;
  }

  std::size_t ncols_;
  std::size_t max_;
  bool lookahead_;
  std::vector<std::vector<Col>> rels_;
  std::vector<std::vector<Col>> subgens_;
  std::vector<std::int32_t> table_;
  std::vector<std::int32_t> parent_;
  std::vector<std::size_t> queue_;
  std::size_t used_ = 0;
  std::size_t total_ = 0;
};

}  // namespace

CosetTable coset_enumerate(const Presentation& p, const std::vector<Word>& subgroup_words,
                           const EnumerationOptions& options) {
  if (p.rank() == 0) {
    CosetTable t;
    t.presentation = p;
    t.subgroup_words = subgroup_words;
    t.cosets = 1;
    t.complete = true;
    t.total_defined = 1;
    return t;
  }
  Enumerator e(p, subgroup_words, options);
  e.run();
  return e.result(p, subgroup_words);
}

std::size_t trace(const CosetTable& t, std::size_t coset, std::span<const Letter> w) {
  for (Letter x : w) {
    const auto next = t.at(coset, x);
    if (next < 0) throw Incomplete();
    coset = static_cast<std::size_t>(next);
  }
  return coset;
}

std::size_t orbit_size(const CosetTable& t, std::size_t first, std::size_t count) {
  std::vector<std::uint8_t> seen(t.cosets, 0);
  std::vector<std::size_t> queue{0};
  seen[0] = 1;
  for (std::size_t i = 0; i < queue.size(); ++i)
    for (std::size_t g = first; g < first + count; ++g)
      for (Letter x : {static_cast<Letter>(g), -static_cast<Letter>(g)}) {
        const auto n = static_cast<std::size_t>(t.at(queue[i], x));
        if (!seen[n]) {
          seen[n] = 1;
          queue.push_back(n);
        }
      }
  return queue.size();
}

}  // namespace dpgrad
