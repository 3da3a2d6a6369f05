#include "qaoab/canonical.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

#include "qaoab/errors.hpp"

namespace qaoab {
namespace {

using Mask = std::uint64_t;
using Partition = std::vector<Mask>;

constexpr Mask bit(int v) { return Mask{1} << v; }

// Splits every cell by neighbour count into each splitter cell until stable.
// Processing order depends only on cell order, so the result is invariant
// under relabeling.
void refine(Partition& cells, const std::vector<Mask>& adj) {
  bool changed = true;
  Partition next;
  next.reserve(adj.size());
  while (changed) {
    changed = false;
    for (size_t s = 0; s < cells.size(); ++s) {
      const Mask splitter = cells[s];
      bool split_any = false;
      next.clear();
      for (const Mask cell : cells) {
        if (std::has_single_bit(cell)) {
          next.push_back(cell);
          continue;
        }
        Mask bucket[kMaxDegree + 1] = {};
        for (Mask rest = cell; rest != 0; rest &= rest - 1) {
          const int v = std::countr_zero(rest);
          bucket[std::popcount(adj[static_cast<size_t>(v)] & splitter)] |= bit(v);
        }
        int parts = 0;
        for (const Mask b : bucket) {
          if (b != 0) {
            next.push_back(b);
            ++parts;
          }
        }
        split_any |= parts > 1;
      }
      if (split_any) {
        cells.swap(next);
        changed = true;
      }
    }
  }
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(static_cast<size_t>(n)) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[static_cast<size_t>(x)] != x) {
      parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
      x = parent[static_cast<size_t>(x)];
    }
    return x;
  }
  void unite(int a, int b) { parent[static_cast<size_t>(find(a))] = find(b); }
};

class Search {
 public:
  explicit Search(std::span<const Mask> adj) : n_(static_cast<int>(adj.size())), adj_(adj.begin(), adj.end()) {}

  void run(Partition cells) {
    std::vector<int> prefix;
    descend(std::move(cells), prefix);
  }

  const std::vector<int>& best_order() const { return best_order_; }
  const std::vector<Mask>& best_rows() const { return best_rows_; }

 private:
  std::vector<Mask> rows_for(const std::vector<int>& order) const {
    std::vector<int> pos(static_cast<size_t>(n_));
    for (int k = 0; k < n_; ++k) pos[static_cast<size_t>(order[static_cast<size_t>(k)])] = k;
    std::vector<Mask> rows(static_cast<size_t>(n_), 0);
    for (int k = 0; k < n_; ++k) {
      for (Mask rest = adj_[static_cast<size_t>(order[static_cast<size_t>(k)])]; rest != 0; rest &= rest - 1) {
        rows[static_cast<size_t>(k)] |= bit(pos[static_cast<size_t>(std::countr_zero(rest))]);
      }
    }
    return rows;
  }

  void record_automorphism(const std::vector<int>& from, const std::vector<int>& to) {
    std::vector<int> perm(static_cast<size_t>(n_));
    for (int k = 0; k < n_; ++k) perm[static_cast<size_t>(from[static_cast<size_t>(k)])] = to[static_cast<size_t>(k)];
    automorphisms_.push_back(std::move(perm));
  }

  void leaf(const Partition& cells) {
    std::vector<int> order;
    order.reserve(static_cast<size_t>(n_));
    for (const Mask c : cells) order.push_back(std::countr_zero(c));
    auto rows = rows_for(order);
    if (first_order_.empty()) {
      first_order_ = order;
      first_rows_ = rows;
      best_order_ = std::move(order);
      best_rows_ = std::move(rows);
      return;
    }
    if (rows == first_rows_) {
      record_automorphism(first_order_, order);
      return;
    }
    if (rows == best_rows_) {
      record_automorphism(best_order_, order);
      return;
    }
    if (rows < best_rows_) {
      best_order_ = std::move(order);
      best_rows_ = std::move(rows);
    }
  }

  // Orbits of the group generated by known automorphisms that fix the prefix.
  UnionFind stabilizer_orbits(const std::vector<int>& prefix) const {
    UnionFind uf(n_);
    for (const auto& perm : automorphisms_) {
      const bool fixes = std::all_of(prefix.begin(), prefix.end(),
                                     [&](int v) { return perm[static_cast<size_t>(v)] == v; });
      if (!fixes) continue;
      for (int v = 0; v < n_; ++v) uf.unite(v, perm[static_cast<size_t>(v)]);
    }
    return uf;
  }

  void descend(Partition cells, std::vector<int>& prefix) {
    refine(cells, adj_);
    size_t target = cells.size();
    int target_size = n_ + 1;
    for (size_t i = 0; i < cells.size(); ++i) {
      const int sz = std::popcount(cells[i]);
      if (sz > 1 && sz < target_size) {
        target = i;
        target_size = sz;
      }
    }
    if (target == cells.size()) {
      leaf(cells);
      return;
    }
    std::vector<int> tried;
    for (Mask rest = cells[target]; rest != 0; rest &= rest - 1) {
      const int v = std::countr_zero(rest);
      if (!tried.empty()) {
        auto uf = stabilizer_orbits(prefix);
        const int root = uf.find(v);
        if (std::any_of(tried.begin(), tried.end(), [&](int t) { return uf.find(t) == root; })) continue;
      }
      tried.push_back(v);
      Partition child;
      child.reserve(cells.size() + 1);
      for (size_t i = 0; i < cells.size(); ++i) {
        if (i == target) {
          child.push_back(bit(v));
          child.push_back(cells[i] & ~bit(v));
        } else {
          child.push_back(cells[i]);
        }
      }
      prefix.push_back(v);
      descend(std::move(child), prefix);
      prefix.pop_back();
    }
  }

  int n_;
  std::vector<Mask> adj_;
  std::vector<int> first_order_;
  std::vector<Mask> first_rows_;
  std::vector<int> best_order_;
  std::vector<Mask> best_rows_;
  std::vector<std::vector<int>> automorphisms_;
};

}  // namespace

CanonicalForm canonical_form(const Graph& g, std::span<const int> colors) {
  if (g.vertex_count() > 64) throw CapacityError("canonical labeling supports at most 64 vertices");
  const auto adj = g.adjacency_masks();
  return canonical_form(adj, colors);
}

CanonicalForm canonical_form(std::span<const std::uint64_t> adj, std::span<const int> colors) {
  const int n = static_cast<int>(adj.size());
  if (n > 64) throw CapacityError("canonical labeling supports at most 64 vertices");
  if (colors.size() != adj.size()) throw DomainError("colour vector size mismatch");

  CanonicalForm out;
  if (n == 0) {
    out.key.push_back('\0');
    return out;
  }

  std::vector<int> distinct(colors.begin(), colors.end());
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  if (distinct.front() < 0 || distinct.back() > 255) throw DomainError("colours must lie in [0, 255]");
  Partition cells;
  for (const int c : distinct) {
    Mask m = 0;
    for (int v = 0; v < n; ++v) {
      if (colors[static_cast<size_t>(v)] == c) m |= bit(v);
    }
    cells.push_back(m);
  }

  Search search(adj);
  search.run(std::move(cells));

  out.order = search.best_order();
  out.position.assign(static_cast<size_t>(n), 0);
  for (int k = 0; k < n; ++k) out.position[static_cast<size_t>(out.order[static_cast<size_t>(k)])] = k;

  const auto& rows = search.best_rows();
  out.key.reserve(static_cast<size_t>(1 + n + (n * (n - 1) / 2 + 7) / 8));
  out.key.push_back(static_cast<char>(n));
  for (int k = 0; k < n; ++k) out.key.push_back(static_cast<char>(colors[static_cast<size_t>(out.order[static_cast<size_t>(k)])]));
  unsigned char acc = 0;
  int nbits = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      acc = static_cast<unsigned char>((acc << 1) | ((rows[static_cast<size_t>(i)] >> j) & 1U));
      if (++nbits == 8) {
        out.key.push_back(static_cast<char>(acc));
        acc = 0;
        nbits = 0;
      }
    }
  }
  if (nbits > 0) out.key.push_back(static_cast<char>(acc << (8 - nbits)));
  return out;
}

std::string to_hex(std::string_view bytes) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (const char c : bytes) {
    const auto b = static_cast<unsigned char>(c);
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 15]);
  }
  return out;
}

std::string from_hex(std::string_view hex) {
  if (hex.size() % 2 != 0) throw FormatError("odd-length hex string");
  auto nibble = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    throw FormatError("invalid hex digit");
  };
  std::string out;
  out.reserve(hex.size() / 2);
  for (size_t i = 0; i < hex.size(); i += 2) {
    out.push_back(static_cast<char>((nibble(hex[i]) << 4) | nibble(hex[i + 1])));
  }
  return out;
}

}  // namespace qaoab
