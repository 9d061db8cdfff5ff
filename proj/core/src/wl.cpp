#include "tdiso/wl.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <map>
#include <numeric>
#include <string>
#include <unordered_set>

#include "tdiso/error.hpp"

namespace tdiso {

const char* to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::Accept: return "ACCEPT";
    case Verdict::Reject: return "REJECT";
    case Verdict::Infeasible: return "INFEASIBLE";
  }
  return "UNKNOWN";
}

std::size_t ColorTable::Hash::operator()(const std::vector<std::uint64_t>& v) const noexcept {
  std::uint64_t h = 0x9E3779B97F4A7C15ull ^ v.size();
  for (auto x : v) {
    h ^= x + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
    h *= 0xBF58476D1CE4E5B9ull;
  }
  return static_cast<std::size_t>(h ^ (h >> 31));
}

Color ColorTable::intern(std::span<const std::uint64_t> descriptor) {
  std::vector<std::uint64_t> key(descriptor.begin(), descriptor.end());
  auto it = table_.find(key);
  if (it != table_.end()) return it->second;
  return table_.emplace(std::move(key), fresh()).first->second;
}

namespace {

double surjections(std::size_t positions, std::size_t targets) {
  if (targets == 0) return positions == 0 ? 1.0 : 0.0;
  double total = 0;
  double binom = 1;
  for (std::size_t i = 0; i <= targets; ++i) {
    double term = binom * std::pow(static_cast<double>(targets - i), static_cast<double>(positions));
    total += (i % 2 == 0) ? term : -term;
    binom = binom * static_cast<double>(targets - i) / static_cast<double>(i + 1);
  }
  return std::round(total);
}

}  // namespace

double TupleUniverse::count(std::size_t n, const BagFamily& family, std::size_t dimension) {
  const auto lead = family.width();
  if (dimension < lead) return 0;
  double heads = 0;
  for (const auto& s : family.sets()) heads += surjections(lead, s.size());
  return heads * std::pow(static_cast<double>(n), static_cast<double>(dimension - lead));
}

std::uint64_t TupleUniverse::head_key(std::span<const Vertex> head) const {
  std::uint64_t key = 0;
  for (Vertex v : head) key = key * n_ + v;
  return key;
}

TupleUniverse::TupleUniverse(std::size_t n, const BagFamily& family, std::size_t dimension, std::size_t cap)
    : n_(n), k_(dimension), lead_(family.width()) {
  if (dimension < lead_) throw Error(ErrorCode::BadParams, "dimension below the family width");
  const double total = count(n, family, dimension);
  if (total > static_cast<double>(cap))
    throw Error(ErrorCode::TupleCapExceeded, "restricted universe would hold " + std::to_string(total) +
                                                 " tuples, cap is " + std::to_string(cap));
  if (lead_ > 0 && std::pow(static_cast<double>(std::max<std::size_t>(n, 2)), static_cast<double>(lead_)) >= 1.8e19)
    throw Error(ErrorCode::TooLarge, "leading tuples do not fit a 64-bit key");

  for (std::size_t i = 0; i < k_ - lead_; ++i) tail_ *= n_;
  radix_.assign(k_, 0);
  std::size_t r = 1;
  for (std::size_t j = k_; j-- > lead_;) {
    radix_[j] = r;
    r *= n_;
  }

  std::vector<std::size_t> digits(lead_);
  std::vector<Vertex> head(lead_);
  std::vector<std::uint32_t> hit;
  for (const auto& s : family.sets()) {
    const auto b = s.size();
    if (b == 0) {
      if (lead_ == 0) {
        head_index_[0] = static_cast<std::uint32_t>(heads_++);
      }
      continue;
    }
    std::fill(digits.begin(), digits.end(), 0);
    while (true) {
      hit.assign(b, 0);
      std::size_t distinct = 0;
      for (std::size_t p = 0; p < lead_; ++p)
        if (hit[digits[p]]++ == 0) ++distinct;
      if (distinct == b) {
        for (std::size_t p = 0; p < lead_; ++p) head[p] = s[digits[p]];
        head_index_.emplace(head_key(head), static_cast<std::uint32_t>(heads_++));
        head_entries_.insert(head_entries_.end(), head.begin(), head.end());
      }
      std::size_t p = lead_;
      while (p > 0) {
        --p;
        if (++digits[p] < b) break;
        digits[p] = 0;
        if (p == 0) {
          p = lead_ + 1;
          break;
        }
      }
      if (p == lead_ + 1 || lead_ == 0) break;
    }
  }

  head_subst_.assign(heads_ * lead_ * n_, kNone);
  for (std::size_t h = 0; h < heads_; ++h) {
    std::span<const Vertex> cur(head_entries_.data() + h * lead_, lead_);
    head.assign(cur.begin(), cur.end());
    for (std::size_t j = 0; j < lead_; ++j) {
      const Vertex keep = head[j];
      for (Vertex x = 0; x < n_; ++x) {
        head[j] = x;
        auto it = head_index_.find(head_key(head));
        if (it != head_index_.end()) head_subst_[(h * lead_ + j) * n_ + x] = it->second;
      }
      head[j] = keep;
    }
  }
}

Vertex TupleUniverse::entry(std::uint32_t t, std::size_t j) const {
  const std::size_t h = t / tail_;
  if (j < lead_) return head_entries_[h * lead_ + j];
  return static_cast<Vertex>((t % tail_) / radix_[j] % n_);
}

std::vector<Vertex> TupleUniverse::tuple(std::uint32_t t) const {
  std::vector<Vertex> out(k_);
  for (std::size_t j = 0; j < k_; ++j) out[j] = entry(t, j);
  return out;
}

std::uint32_t TupleUniverse::substitute(std::uint32_t t, std::size_t j, Vertex x) const {
  const std::size_t h = t / tail_;
  const std::size_t rest = t % tail_;
  if (j < lead_) {
    auto nh = head_subst_[(h * lead_ + j) * n_ + x];
    if (nh == kNone) return kNone;
    return static_cast<std::uint32_t>(nh * tail_ + rest);
  }
  const std::size_t cur = rest / radix_[j] % n_;
  return static_cast<std::uint32_t>(t - cur * radix_[j] + static_cast<std::size_t>(x) * radix_[j]);
}

std::uint32_t TupleUniverse::find(std::span<const Vertex> tuple) const {
  if (tuple.size() != k_) return kNone;
  for (Vertex v : tuple)
    if (v >= n_) return kNone;
  auto it = head_index_.find(head_key(tuple.first(lead_)));
  if (it == head_index_.end()) return kNone;
  std::size_t rest = 0;
  for (std::size_t j = lead_; j < k_; ++j) rest = rest * n_ + tuple[j];
  return static_cast<std::uint32_t>(it->second * tail_ + rest);
}

WLColoring initial_coloring(const ColoredGraph& g, const TupleUniverse& u, ColorTable& table) {
  const auto k = u.dimension();
  const auto& part = g.partition;
  // Colored orderings grouped by class.
  std::vector<std::vector<std::pair<std::vector<Vertex>, Color>>> by_class(part.class_count());
  for (const auto& [ord, c] : g.coloring.entries()) by_class[part.class_of(ord.front())].emplace_back(ord, c);

  WLColoring out(u.size());
  std::vector<Vertex> t(k);
  std::vector<std::uint64_t> desc;
  std::vector<std::size_t> seen_classes;
  std::vector<std::uint64_t> records;
  for (std::uint32_t idx = 0; idx < u.size(); ++idx) {
    for (std::size_t j = 0; j < k; ++j) t[j] = u.entry(idx, j);
    desc.clear();
    desc.push_back(k);
    std::uint64_t word = 0;
    std::size_t used = 0;
    auto put = [&](bool bit) {
      word = (word << 1) | (bit ? 1u : 0u);
      if (++used == 64) {
        desc.push_back(word);
        word = 0;
        used = 0;
      }
    };
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = i + 1; j < k; ++j) {
        put(t[i] == t[j]);
        put(t[i] != t[j] && g.graph.adjacent(t[i], t[j]));
        put(part.class_of(t[i]) == part.class_of(t[j]));
      }
    desc.push_back(word);
    desc.push_back(used);
    for (std::size_t i = 0; i < k; ++i) desc.push_back(part.members(part.class_of(t[i])).size());

    // Tuple colors of classes lying entirely inside the entries.
    seen_classes.clear();
    records.clear();
    for (std::size_t i = 0; i < k; ++i) {
      auto c = part.class_of(t[i]);
      if (by_class[c].empty() || std::find(seen_classes.begin(), seen_classes.end(), c) != seen_classes.end())
        continue;
      seen_classes.push_back(c);
      bool inside = true;
      for (Vertex m : part.members(c))
        if (std::find(t.begin(), t.end(), m) == t.end()) {
          inside = false;
          break;
        }
      if (!inside) continue;
      for (const auto& [ord, color] : by_class[c]) {
        std::uint64_t code = color;
        for (Vertex m : ord) code = code * (k + 1) + static_cast<std::uint64_t>(std::find(t.begin(), t.end(), m) - t.begin());
        records.push_back(code);
        records.push_back(ord.size());
      }
    }
    std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs;
    for (std::size_t r = 0; r < records.size(); r += 2) pairs.emplace_back(records[r + 1], records[r]);
    std::sort(pairs.begin(), pairs.end());
    desc.push_back(pairs.size());
    for (auto [len, code] : pairs) {
      desc.push_back(len);
      desc.push_back(code);
    }
    out[idx] = table.intern(desc);
  }
  return out;
}

WLColoring initial_coloring(const Graph& g, const TupleUniverse& u, ColorTable& table) {
  return initial_coloring(ColoredGraph::plain(g), u, table);
}

WLColoring refine_round(const TupleUniverse& u, const WLColoring& coloring, ColorTable& table) {
  const auto k = u.dimension();
  const auto n = u.vertex_count();
  WLColoring out(u.size());
  std::vector<std::vector<std::uint64_t>> vecs(n, std::vector<std::uint64_t>(k));
  std::vector<std::uint64_t> desc;
  for (std::uint32_t t = 0; t < u.size(); ++t) {
    for (Vertex x = 0; x < n; ++x)
      for (std::size_t j = 0; j < k; ++j) {
        auto s = u.substitute(t, j, x);
        vecs[x][j] = s == TupleUniverse::kNone ? kBottom : coloring[s];
      }
    std::sort(vecs.begin(), vecs.end());
    desc.clear();
    desc.push_back(coloring[t]);
    for (const auto& v : vecs) desc.insert(desc.end(), v.begin(), v.end());
    out[t] = table.intern(desc);
  }
  return out;
}

namespace {

std::size_t distinct_count(const WLColoring& c) {
  std::unordered_set<Color> s(c.begin(), c.end());
  return s.size();
}

}  // namespace

WLColoring naive_stable(const TupleUniverse& u, WLColoring coloring, ColorTable& table) {
  auto classes = distinct_count(coloring);
  while (true) {
    auto next = refine_round(u, coloring, table);
    auto c = distinct_count(next);
    coloring = std::move(next);
    if (c == classes) return coloring;
    classes = c;
  }
}

std::vector<std::uint32_t> partition_of(const WLColoring& coloring) {
  std::unordered_map<Color, std::uint32_t> rename;
  std::vector<std::uint32_t> out(coloring.size());
  for (std::size_t i = 0; i < coloring.size(); ++i) {
    auto [it, fresh] = rename.try_emplace(coloring[i], static_cast<std::uint32_t>(rename.size()));
    out[i] = it->second;
  }
  return out;
}

namespace {

// Interns fixed-length vectors of colors; cleared between splitters.
class VectorInterner {
 public:
  explicit VectorInterner(std::size_t len) : len_(len) {}

  void clear() {
    for (auto s : used_) slots_[s] = 0;
    used_.clear();
    arena_.clear();
  }

  std::uint32_t intern(const std::uint32_t* v) {
    if ((arena_.size() / std::max<std::size_t>(len_, 1) + 1) * 2 > slots_.size()) grow();
    const auto mask = slots_.size() - 1;
    for (std::size_t s = hash(v) & mask;; s = (s + 1) & mask) {
      if (slots_[s] == 0) {
        const auto id = static_cast<std::uint32_t>(arena_.size() / std::max<std::size_t>(len_, 1));
        arena_.insert(arena_.end(), v, v + len_);
        slots_[s] = id + 1;
        used_.push_back(s);
        return id;
      }
      const auto id = slots_[s] - 1;
      if (std::equal(v, v + len_, arena_.begin() + static_cast<std::ptrdiff_t>(id * len_))) return id;
    }
  }

 private:
  std::size_t hash(const std::uint32_t* v) const {
    std::uint64_t h = 0x9E3779B97F4A7C15ull;
    for (std::size_t i = 0; i < len_; ++i) {
      h ^= v[i];
      h *= 0xBF58476D1CE4E5B9ull;
      h ^= h >> 29;
    }
    return static_cast<std::size_t>(h);
  }

  void grow() {
    const auto bigger = std::max<std::size_t>(slots_.size() * 2, 1024);
    slots_.assign(bigger, 0);
    used_.clear();
    const auto count = arena_.size() / std::max<std::size_t>(len_, 1);
    const auto mask = bigger - 1;
    for (std::size_t id = 0; id < count; ++id) {
      auto s = hash(arena_.data() + id * len_) & mask;
      while (slots_[s] != 0) s = (s + 1) & mask;
      slots_[s] = static_cast<std::uint32_t>(id + 1);
      used_.push_back(s);
    }
  }

  std::size_t len_;
  std::vector<std::uint32_t> arena_;
  std::vector<std::uint32_t> slots_;
  std::vector<std::size_t> used_;
};

// Interns variable-length runs of integers; cleared between splitters.
class RunInterner {
 public:
  void clear() {
    for (auto s : used_) slots_[s] = 0;
    used_.clear();
    arena_.clear();
    start_.assign(1, 0);
  }

  std::uint32_t intern(const std::vector<std::uint32_t>& v) {
    if ((start_.size() + 1) * 2 > slots_.size()) grow();
    const auto mask = slots_.size() - 1;
    for (std::size_t s = hash(v.data(), v.size()) & mask;; s = (s + 1) & mask) {
      if (slots_[s] == 0) {
        const auto id = static_cast<std::uint32_t>(start_.size() - 1);
        arena_.insert(arena_.end(), v.begin(), v.end());
        start_.push_back(arena_.size());
        slots_[s] = id + 1;
        used_.push_back(s);
        return id;
      }
      const auto id = slots_[s] - 1;
      const auto len = start_[id + 1] - start_[id];
      if (len == v.size() && std::equal(v.begin(), v.end(), arena_.begin() + static_cast<std::ptrdiff_t>(start_[id])))
        return id;
    }
  }

 private:
  static std::size_t hash(const std::uint32_t* v, std::size_t len) {
    std::uint64_t h = 0x9E3779B97F4A7C15ull ^ len;
    for (std::size_t i = 0; i < len; ++i) {
      h ^= v[i];
      h *= 0xBF58476D1CE4E5B9ull;
      h ^= h >> 29;
    }
    return static_cast<std::size_t>(h);
  }

  void grow() {
    const auto bigger = std::max<std::size_t>(slots_.size() * 2, 1024);
    slots_.assign(bigger, 0);
    used_.clear();
    const auto mask = bigger - 1;
    for (std::size_t id = 0; id + 1 < start_.size(); ++id) {
      auto s = hash(arena_.data() + start_[id], start_[id + 1] - start_[id]) & mask;
      while (slots_[s] != 0) s = (s + 1) & mask;
      slots_[s] = static_cast<std::uint32_t>(id + 1);
      used_.push_back(s);
    }
  }

  std::vector<std::uint32_t> arena_;
  std::vector<std::size_t> start_{0};
  std::vector<std::uint32_t> slots_;
  std::vector<std::size_t> used_;
};

// Splitter-queue refinement over the disjoint union of several universes.
// Fragments of a split class receive previously unused colors.
class SplitterRefinement {
 public:
  SplitterRefinement(std::span<const TupleUniverse* const> us, std::vector<WLColoring> initial, ColorTable& table)
      : us_(us.begin(), us.end()), table_(table), vectors_(us.empty() ? 0 : us.front()->dimension()) {
    if (us_.empty()) return;
    k_ = us_.front()->dimension();
    for (const auto* u : us_)
      if (u->dimension() != k_) throw Error(ErrorCode::BadParams, "universes differ in dimension");
    offset_.push_back(0);
    for (const auto* u : us_) offset_.push_back(offset_.back() + u->size());
    const auto total = offset_.back();
    color_.reserve(total);
    for (auto& c : initial) color_.insert(color_.end(), c.begin(), c.end());
    in_b_.assign(total, 0);
    desc_id_.assign(total, 0);
    digit_.resize(k_);
    sub_.resize(k_);
    vec_.resize(k_);
    desc_stamp_.assign(total, 0);
  }

  // With two universes, stop as soon as some class holds unequally many
  // tuples of each; the final colorings then differ as well.
  void stop_on_imbalance() { watch_ = us_.size() == 2; }
  bool unbalanced() const noexcept { return unbalanced_; }

  std::vector<WLColoring> run() {
    if (us_.empty()) return {};
    const auto total = color_.size();
    elems_.resize(total);
    pos_.resize(total);
    std::iota(elems_.begin(), elems_.end(), std::uint32_t{0});
    std::stable_sort(elems_.begin(), elems_.end(), [&](std::uint32_t a, std::uint32_t b) { return color_[a] < color_[b]; });
    for (std::size_t i = 0; i < total;) {
      const Color c = color_[elems_[i]];
      std::size_t j = i;
      while (j < total && color_[elems_[j]] == c) {
        pos_[elems_[j]] = static_cast<std::uint32_t>(j);
        ++j;
      }
      set_segment(c, i, j);
      if (watch_) note_balance(c, count_first(i, j), j - i);
      queue_.emplace_back(elems_.begin() + static_cast<std::ptrdiff_t>(i), elems_.begin() + static_cast<std::ptrdiff_t>(j));
      i = j;
    }
    while (!queue_.empty() && !unbalanced_) {
      auto b = std::move(queue_.front());
      queue_.pop_front();
      split_with(b);
    }
    std::vector<WLColoring> out;
    for (std::size_t i = 0; i < us_.size(); ++i)
      out.emplace_back(color_.begin() + static_cast<std::ptrdiff_t>(offset_[i]),
                       color_.begin() + static_cast<std::ptrdiff_t>(offset_[i + 1]));
    return out;
  }

 private:
  std::size_t owner(std::uint32_t g) const {
    std::size_t i = 0;
    while (offset_[i + 1] <= g) ++i;
    return i;
  }

  // Appends (target, vector id) for every witness of every tuple of b. A witness
  // x is counted once, at the least coordinate whose substitution lands in b.
  void collect(const std::vector<std::uint32_t>& b) {
    pairs_.clear();
    vectors_.clear();
    auto& digit = digit_;
    auto& sub = sub_;
    auto& vec = vec_;
    for (auto gt : b) {
      const auto ui = owner(gt);
      const auto& u = *us_[ui];
      const auto base = static_cast<std::uint32_t>(offset_[ui]);
      const std::uint32_t local = gt - base;
      const auto n = u.vertex_count();
      const auto lead = u.lead();
      const std::size_t tail = u.tail_size();
      const std::size_t head = local / tail;
      const std::size_t rest = local % tail;
      for (std::size_t j = 0; j < k_; ++j) digit[j] = u.entry(local, j);
      for (std::size_t j = 0; j < k_; ++j) {
        const Vertex x = digit[j];
        for (Vertex y = 0; y < n; ++y) {
          // Target t[j <- y] as (head2, rest2).
          std::size_t head2 = head, rest2 = rest;
          if (j < lead) {
            auto h = u.head_substitute(head, j, y);
            if (h == TupleUniverse::kNone) continue;
            head2 = h;
          } else {
            rest2 = rest + (static_cast<std::size_t>(y) - x) * u.radix(j);
          }
          for (std::size_t i = 0; i < k_; ++i) {
            if (i == j) {
              sub[i] = local;
            } else if (i < lead) {
              auto h = u.head_substitute(head2, i, x);
              sub[i] = h == TupleUniverse::kNone ? TupleUniverse::kNone
                                                  : static_cast<std::uint32_t>(h * tail + rest2);
            } else {
              sub[i] = static_cast<std::uint32_t>(head2 * tail + rest2 +
                                                  (static_cast<std::size_t>(x) - digit[i]) * u.radix(i));
            }
          }
          bool earlier = false;
          for (std::size_t i = 0; i < j && !earlier; ++i)
            earlier = sub[i] != TupleUniverse::kNone && in_b_[base + sub[i]] == stamp_;
          if (earlier) continue;
          for (std::size_t i = 0; i < k_; ++i)
            vec[i] = sub[i] == TupleUniverse::kNone ? kBottom : color_[base + sub[i]];
          const auto target = base + static_cast<std::uint32_t>(head2 * tail + rest2);
          pairs_.push_back(static_cast<std::uint64_t>(target) << 32 | vectors_.intern(vec.data()));
        }
      }
    }
  }

  void split_with(const std::vector<std::uint32_t>& b) {
    ++stamp_;
    for (auto t : b) in_b_[t] = stamp_;
    collect(b);
    std::sort(pairs_.begin(), pairs_.end());

    // Descriptor per target: sorted (vector id, multiplicity) runs, numbered
    // in order of first appearance.
    descs_.clear();
    touched_.clear();
    auto& runs = runs_;
    for (std::size_t i = 0; i < pairs_.size();) {
      const auto target = static_cast<std::uint32_t>(pairs_[i] >> 32);
      runs.clear();
      while (i < pairs_.size() && (pairs_[i] >> 32) == target) {
        const auto key = pairs_[i];
        std::uint32_t count = 0;
        while (i < pairs_.size() && pairs_[i] == key) {
          ++count;
          ++i;
        }
        runs.push_back(static_cast<std::uint32_t>(key));
        runs.push_back(count);
      }
      desc_id_[target] = descs_.intern(runs) + 1;
      desc_stamp_[target] = stamp_;
      touched_.emplace_back(color_[target], target);
    }
    std::sort(touched_.begin(), touched_.end());
    for (std::size_t i = 0; i < touched_.size();) {
      const Color c = touched_[i].first;
      group_.clear();
      for (; i < touched_.size() && touched_[i].first == c; ++i) group_.push_back(touched_[i].second);
      split_class(c, group_);
    }
  }

  void set_segment(Color c, std::size_t begin, std::size_t end) {
    if (c >= seg_.size()) seg_.resize(std::max<std::size_t>(c + 1, seg_.size() * 2));
    seg_[c] = {static_cast<std::uint32_t>(begin), static_cast<std::uint32_t>(end)};
  }

  std::uint32_t desc_of(std::uint32_t t) const { return desc_stamp_[t] == stamp_ ? desc_id_[t] : 0; }

  // Moves the touched tuples to the end of the class segment, grouped by
  // descriptor. The largest fragment keeps c; the others get fresh colors and
  // are queued. Cost is linear in the touched part.
  void split_class(Color c, std::vector<std::uint32_t>& ts) {
    const auto [begin, end] = seg_[c];
    const std::size_t size = end - begin;
    std::sort(ts.begin(), ts.end(),
              [&](std::uint32_t a, std::uint32_t b) { return std::pair(desc_of(a), a) < std::pair(desc_of(b), b); });
    if (ts.size() == size && desc_of(ts.front()) == desc_of(ts.back())) return;
    std::size_t boundary = end;
    for (auto t : ts) {
      --boundary;
      const auto other = elems_[boundary];
      const auto p = pos_[t];
      elems_[p] = other;
      pos_[other] = p;
      elems_[boundary] = t;
      pos_[t] = static_cast<std::uint32_t>(boundary);
    }
    for (std::size_t i = 0; i < ts.size(); ++i) {
      elems_[boundary + i] = ts[i];
      pos_[ts[i]] = static_cast<std::uint32_t>(boundary + i);
    }
    parts_.clear();
    if (boundary > begin) parts_.emplace_back(begin, boundary);
    for (std::size_t i = 0; i < ts.size(); ++i)
      if (i == 0 || desc_of(ts[i - 1]) != desc_of(ts[i]))
        parts_.emplace_back(boundary + i, boundary + i + 1);
      else
        parts_.back().second = boundary + i + 1;
    std::size_t largest = 0;
    for (std::size_t p = 1; p < parts_.size(); ++p)
      if (parts_[p].second - parts_[p].first > parts_[largest].second - parts_[largest].first) largest = p;
    std::size_t rest = watch_ ? first_count_[c] : 0;
    for (std::size_t p = 0; p < parts_.size(); ++p) {
      const auto [pb, pe] = parts_[p];
      const auto first = elems_.begin() + static_cast<std::ptrdiff_t>(pb);
      const auto last = elems_.begin() + static_cast<std::ptrdiff_t>(pe);
      if (p == largest) continue;
      const Color nc = table_.fresh();
      for (auto it = first; it != last; ++it) color_[*it] = nc;
      set_segment(nc, pb, pe);
      if (watch_) {
        const auto z = count_first(pb, pe);
        rest -= z;
        note_balance(nc, z, pe - pb);
      }
      queue_.emplace_back(first, last);
    }
    set_segment(c, parts_[largest].first, parts_[largest].second);
    if (watch_) note_balance(c, rest, parts_[largest].second - parts_[largest].first);
  }

  std::size_t count_first(std::size_t begin, std::size_t end) const {
    std::size_t z = 0;
    for (std::size_t i = begin; i < end; ++i) z += elems_[i] < offset_[1];
    return z;
  }

  void note_balance(Color c, std::size_t first, std::size_t size) {
    if (c >= first_count_.size()) first_count_.resize(std::max<std::size_t>(c + 1, first_count_.size() * 2));
    first_count_[c] = first;
    if (2 * first != size) unbalanced_ = true;
  }

  std::vector<const TupleUniverse*> us_;
  ColorTable& table_;
  VectorInterner vectors_;
  std::size_t k_ = 0;
  std::vector<std::size_t> offset_;
  std::vector<Color> color_;
  std::vector<std::uint32_t> elems_, pos_;                   // classes are contiguous segments of elems_
  std::vector<std::pair<std::uint32_t, std::uint32_t>> seg_;  // indexed by color
  std::vector<std::pair<std::size_t, std::size_t>> parts_;
  bool watch_ = false, unbalanced_ = false;
  std::vector<std::size_t> first_count_;  // tuples of the first universe, per color
  std::vector<Vertex> digit_;
  std::vector<std::uint32_t> sub_, vec_, runs_, group_;
  std::vector<std::pair<Color, std::uint32_t>> touched_;
  std::deque<std::vector<std::uint32_t>> queue_;
  std::vector<std::uint32_t> in_b_;
  std::uint32_t stamp_ = 0;
  std::vector<std::uint64_t> pairs_;
  RunInterner descs_;
  std::vector<std::uint32_t> desc_id_;
  std::vector<std::uint32_t> desc_stamp_;
};

}  // namespace

std::vector<WLColoring> stable_refinement(std::span<const TupleUniverse* const> universes,
                                          std::vector<WLColoring> initial, ColorTable& table) {
  if (universes.size() != initial.size()) throw Error(ErrorCode::BadParams, "one initial coloring per universe");
  for (std::size_t i = 0; i < universes.size(); ++i)
    if (universes[i]->size() != initial[i].size()) throw Error(ErrorCode::BadParams, "coloring size mismatch");
  return SplitterRefinement(universes, std::move(initial), table).run();
}

WLColoring stable_refinement(const TupleUniverse& u, const WLColoring& initial, ColorTable& table) {
  const TupleUniverse* us[1] = {&u};
  return std::move(stable_refinement(us, {initial}, table).front());
}

Verdict compare_graphs(const ColoredGraph& g1, const BagFamily& v1, const ColoredGraph& g2, const BagFamily& v2,
                       std::size_t extra_dims, const WlOptions& opt) {
  if (extra_dims < 3) throw Error(ErrorCode::BadParams, "at least three extra dimensions are required");
  if (v1.width() != v2.width() || v1.size() != v2.size()) return Verdict::Reject;
  if (g1.graph.order() != g2.graph.order() || g1.graph.size() != g2.graph.size()) return Verdict::Reject;
  const auto dim = v1.width() + extra_dims;
  const double total = TupleUniverse::count(g1.graph.order(), v1, dim) + TupleUniverse::count(g2.graph.order(), v2, dim);
  if (total > static_cast<double>(opt.tuple_cap))
    throw Error(ErrorCode::TupleCapExceeded, "restricted universes would hold " + std::to_string(total) +
                                                 " tuples, cap is " + std::to_string(opt.tuple_cap));
  TupleUniverse u1(g1.graph.order(), v1, dim, opt.tuple_cap);
  TupleUniverse u2(g2.graph.order(), v2, dim, opt.tuple_cap);
  if (u1.size() != u2.size()) return Verdict::Reject;
  ColorTable table;
  std::vector<WLColoring> init;
  init.push_back(initial_coloring(g1, u1, table));
  init.push_back(initial_coloring(g2, u2, table));
  auto h1 = init[0], h2 = init[1];
  std::sort(h1.begin(), h1.end());
  std::sort(h2.begin(), h2.end());
  if (h1 != h2) return Verdict::Reject;
  const TupleUniverse* us[2] = {&u1, &u2};
  SplitterRefinement joint(us, std::move(init), table);
  joint.stop_on_imbalance();
  auto fin = joint.run();
  if (joint.unbalanced()) return Verdict::Reject;
  std::sort(fin[0].begin(), fin[0].end());
  std::sort(fin[1].begin(), fin[1].end());
  return fin[0] == fin[1] ? Verdict::Accept : Verdict::Reject;
}

Verdict compare_graphs(const Graph& g1, const BagFamily& v1, const Graph& g2, const BagFamily& v2,
                       std::size_t extra_dims, const WlOptions& opt) {
  return compare_graphs(ColoredGraph::plain(g1), v1, ColoredGraph::plain(g2), v2, extra_dims, opt);
}

Verdict compare_with_strong_capture(const ColoredGraph& g1, const BagFamily& v1, const ColoredGraph& g2,
                                    const BagFamily& v2, const WlOptions& opt) {
  if (v1.width() != v2.width()) return Verdict::Reject;
  const auto w = v1.width();
  auto u1 = pairwise_union_family(v1);
  auto u2 = pairwise_union_family(v2);
  if (u1.width() != u2.width()) return Verdict::Reject;
  const std::size_t dim = 2 * w + 3;
  return compare_graphs(g1, u1, g2, u2, dim - u1.width(), opt);
}

Verdict compare_with_strong_capture(const Graph& g1, const BagFamily& v1, const Graph& g2, const BagFamily& v2,
                                    const WlOptions& opt) {
  return compare_with_strong_capture(ColoredGraph::plain(g1), v1, ColoredGraph::plain(g2), v2, opt);
}

}  // namespace tdiso
