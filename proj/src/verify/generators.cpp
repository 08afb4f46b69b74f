#include "jtree/generators.hpp"

#include <algorithm>
#include <set>

#include "jtree/error.hpp"

namespace jtree::gen {

namespace {

std::string bits_of(NodeKey key) {
  std::string bits;
  for (int l = level_of(key) - 1; l >= 0; --l) bits.push_back(((key >> l) & 1U) ? '1' : '0');
  return bits;
}

std::string random_bits(Rng& rng, std::size_t n) {
  std::string bits;
  for (std::size_t i = 0; i < n; ++i) bits.push_back(rng.coin() ? '1' : '0');
  return bits;
}

Rational square(const Rational& q) { return q * q; }

// Block of `len` consecutive positions starting at `start`, with nonzero total.
SeqVector random_block(Rng& rng, std::uint64_t start, std::size_t len) {
  for (;;) {
    SeqVector x;
    for (std::size_t i = 0; i < len; ++i) x.set(start + i, nonzero_rational(rng));
    if (i_infty(x) != 0) return x;
  }
}

}  // namespace

Rng::Rng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  engine_.seed(seq);
}

std::int64_t Rng::between(std::int64_t lo, std::int64_t hi) {
  if (hi < lo) throw InputError("empty random range");
  const auto range = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<std::int64_t>(range == 0 ? next() : below(range));
}

Rational rational(Rng& rng, int bound, int max_den) {
  const std::int64_t den = rng.between(1, max_den);
  return make_rational(rng.between(-bound * den, bound * den), den);
}

Rational nonzero_rational(Rng& rng, int bound, int max_den) {
  for (;;) {
    Rational q = rational(rng, bound, max_den);
    if (q != 0) return q;
  }
}

std::vector<Rational> rationals(Rng& rng, std::size_t n, int bound, int max_den) {
  std::vector<Rational> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(rational(rng, bound, max_den));
  return out;
}

NodeKey random_key(Rng& rng, int depth) { return 1 + rng.below(tree_size(depth)); }

TreeVector tree_vector(Rng& rng, int depth, std::size_t support) {
  TreeVector x(depth);
  const std::size_t n = 1 + rng.below(std::max<std::size_t>(support, 1));
  for (std::size_t i = 0; i < n; ++i) x.set(random_key(rng, depth), nonzero_rational(rng));
  return x;
}

LevelBlockSequence level_block(Rng& rng, std::size_t terms, int depth) {
  if (terms == 0 || terms > static_cast<std::size_t>(depth) + 1) {
    throw InputError("level-block: need 1 <= terms <= depth + 1");
  }
  // Choose terms - 1 distinct cut levels in 1..depth; band k is [cut_k, cut_{k+1} - 1].
  std::vector<int> levels;
  for (int l = 1; l <= depth; ++l) levels.push_back(l);
  for (std::size_t i = 0; i + 1 < terms; ++i) {
    std::swap(levels[i], levels[i + rng.below(levels.size() - i)]);
  }
  std::vector<int> cuts{0};
  cuts.insert(cuts.end(), levels.begin(), levels.begin() + static_cast<std::ptrdiff_t>(terms - 1));
  std::sort(cuts.begin(), cuts.end());
  cuts.push_back(depth + 1);

  LevelBlockSequence seq;
  for (std::size_t k = 0; k < terms; ++k) {
    TreeVector x(depth);
    const std::size_t n = 1 + rng.below(4);
    for (std::size_t i = 0; i < n; ++i) {
      const int level = static_cast<int>(rng.between(cuts[k], cuts[k + 1] - 1));
      x.set(node_key(level, rng.below(std::uint64_t{1} << level)), nonzero_rational(rng));
    }
    seq.terms.push_back(std::move(x));
  }
  return seq;
}

std::vector<Branch> branches(Rng& rng, std::size_t count, int depth) {
  if (depth < 0 || depth > 62) throw InputError("branches: depth must lie in [0, 62]");
  if (depth < 62 && count > (std::uint64_t{1} << depth)) {
    throw InputError("branches: " + std::to_string(count) + " distinct branches do not exist at depth " +
                     std::to_string(depth));
  }
  std::set<std::string> seen;
  std::vector<Branch> out;
  while (out.size() < count) {
    std::string bits = random_bits(rng, static_cast<std::size_t>(depth));
    if (seen.insert(bits).second) out.emplace_back(std::move(bits));
  }
  return out;
}

std::vector<NodeKey> antichain(Rng& rng, std::size_t max_size, int depth) {
  std::vector<NodeKey> frontier{1};
  const std::size_t splits = rng.below(2 * max_size + 1);
  for (std::size_t i = 0; i < splits; ++i) {
    const std::size_t at = rng.below(frontier.size());
    const NodeKey k = frontier[at];
    if (level_of(k) >= depth) continue;
    frontier[at] = left_child(k);
    frontier.push_back(right_child(k));
  }
  // Random descent below each frontier node keeps the set incomparable.
  for (auto& k : frontier) {
    while (level_of(k) < depth && rng.below(3) == 0) k = rng.coin() ? right_child(k) : left_child(k);
  }
  for (std::size_t i = frontier.size(); i > 1; --i) std::swap(frontier[i - 1], frontier[rng.below(i)]);
  frontier.resize(std::min(frontier.size(), 1 + rng.below(max_size)));
  std::sort(frontier.begin(), frontier.end());
  return frontier;
}

Segment segment(Rng& rng, int depth) {
  const NodeKey bottom = random_key(rng, depth);
  const int up = static_cast<int>(rng.below(static_cast<std::uint64_t>(level_of(bottom)) + 1));
  return Segment(bottom >> up, bottom);
}

TreeVector branch_vector(Rng& rng, const Branch& b) {
  TreeVector x(b.depth());
  for (NodeKey k : b.keys()) {
    if (rng.below(3) != 0) x.set(k, rational(rng));
  }
  if (x.empty()) x.set(b.keys()[rng.below(b.keys().size())], nonzero_rational(rng));
  return x;
}

RestrictionSet admissible_set(Rng& rng, int depth) {
  auto tops = [&] {
    for (;;) {
      auto nodes = antichain(rng, 4, depth);
      if (!(nodes.size() == 1 && nodes.front() == 1)) return nodes;
    }
  };
  auto finals = [&](const std::vector<NodeKey>& nodes) {
    std::vector<std::pair<Branch, NodeKey>> tails;
    for (NodeKey t : nodes) {
      const auto rest = static_cast<std::size_t>(depth - level_of(t));
      tails.emplace_back(Branch(bits_of(t) + random_bits(rng, rng.below(rest + 1))), parent_of(t));
    }
    return tails;
  };
  switch (rng.below(5)) {
    case 0:
      return RestrictionSet::subtrees(antichain(rng, 4, depth), depth);
    case 1: {
      const auto nodes = tops();
      return RestrictionSet::final_segments(finals(nodes), depth);
    }
    case 2: {
      const int lo = static_cast<int>(rng.between(0, depth));
      return RestrictionSet::level_band(lo, static_cast<int>(rng.between(lo, depth)));
    }
    case 3: {
      // Ancestor-closed: every segment meets it in an upper part.
      std::set<NodeKey> keys;
      const std::size_t n = 1 + rng.below(6);
      for (std::size_t i = 0; i < n; ++i) {
        for (NodeKey k = random_key(rng, depth); k >= 1; k = parent_of(k)) keys.insert(k);
      }
      return RestrictionSet::from_keys(std::move(keys), depth);
    }
    default: {
      auto nodes = tops();
      if (nodes.size() < 2) return RestrictionSet::subtrees(nodes, depth);
      const NodeKey root = nodes.back();
      nodes.pop_back();
      return RestrictionSet::unite(RestrictionSet::subtrees({root}, depth),
                                   RestrictionSet::final_segments(finals(nodes), depth), depth);
    }
  }
}

L6Instance j_block_zero_sum(Rng& rng, std::size_t terms, const Rational& eps) {
  if (terms == 0) throw InputError("j-block-zero-sum: need at least one term");
  if (eps <= 0) throw InputError("j-block-zero-sum: eps must be positive");
  L6Instance inst{{}, eps, make_rational(rng.between(1, 12), rng.between(1, 4))};
  const Rational lo = eps < 1 ? Rational(square(1 - eps) * inst.alpha_sq) : Rational(0);
  const Rational hi = square(1 + eps) * inst.alpha_sq;
  std::uint64_t pos = 1 + rng.below(3);
  while (inst.seq.terms.size() < terms) {
    const std::size_t len = 2 + rng.below(3);
    SeqVector x;
    Rational total = 0;
    for (std::size_t i = 0; i + 1 < len; ++i) {
      const Rational v = nonzero_rational(rng);
      x.set(pos + i, v);
      total += v;
    }
    x.set(pos + len - 1, -total);
    if (x.size() < 2) continue;
    const Rational nsq = j_norm_sq(x).value_sq;
    const Rational c = sqrt_floor(inst.alpha_sq / nsq, std::uint64_t{1} << 20);
    const SeqVector y = x.scaled(c);
    const Rational ysq = j_norm_sq(y).value_sq;
    if (c == 0 || !(ysq < hi) || !(ysq > lo)) continue;
    inst.seq.terms.push_back(y);
    pos = y.max_key() + 1 + rng.below(3);
  }
  return inst;
}

P10Instance j_block_alpha(Rng& rng, std::size_t terms, const Rational& eps) {
  if (terms == 0) throw InputError("j-block-alpha: need at least one term");
  if (!(eps > 0 && eps < 1)) throw InputError("j-block-alpha: eps must lie in (0,1)");
  P10Instance inst{{}, eps, nonzero_rational(rng, 2, 4), 0};
  const Rational drift_unit = abs(inst.alpha) * eps / 8;
  std::uint64_t pos = 1 + rng.below(3);
  Rational max_sq = 0;
  for (std::size_t n = 0; n < terms; ++n) {
    SeqVector x = random_block(rng, pos, 1 + rng.below(4));
    x = x.scaled(inst.alpha / i_infty(x));
    // Drift 2^-(n+1) * |alpha| eps / 8 keeps the total below |alpha| eps / 8.
    if (rng.coin()) {
      Rational d = drift_unit / Rational(mpz_class(1) << static_cast<mp_bitcnt_t>(n + 1));
      if (rng.coin()) d = -d;
      const NodeKey at = x.min_key() + rng.below(x.max_key() - x.min_key() + 1);
      x.set(at, x.get(at) + d);
    }
    max_sq = std::max(max_sq, j_norm_sq(x).value_sq);
    pos = x.max_key() + 1 + rng.below(3);
    inst.seq.terms.push_back(std::move(x));
  }
  constexpr std::uint64_t den = 1024;
  inst.beta = sqrt_floor(max_sq, den) + make_rational(1, den);
  return inst;
}

P11Config p11_geometric(Rng& rng, std::size_t tail) {
  static const std::vector<Rational> eps_choices{make_rational(1, 4), make_rational(1, 3), make_rational(1, 2),
                                                 make_rational(2, 3)};
  P11Config cfg;
  cfg.eps = eps_choices[rng.below(eps_choices.size())];
  cfg.bnorm = make_rational(rng.between(2, 6), 2);
  const Rational q = rng.coin() ? make_rational(1, 2) : make_rational(2, 3);
  const Rational rho = q * make_rational(rng.between(1, 4), 4);

  // (1, 4/5, 3/5) has squared sum 2, so the head fills the first budget exactly.
  for (const Rational& f : {make_rational(1), make_rational(4, 5), make_rational(3, 5)}) {
    const Rational s = (1 + cfg.eps) * cfg.bnorm * f;
    cfg.a.push_back(rng.coin() ? Rational(s / 2) : Rational(-s / 2));
    cfg.b.push_back(s / 2);
  }
  const Rational delta2 = cfg.eps * cfg.bnorm * (1 - q) / 2;
  const Rational t = make_rational(9, 10) * delta2 / (3 * (1 + cfg.eps));
  Rational s = t;
  for (std::size_t j = 0; j < tail; ++j, s *= rho) {
    cfg.a.push_back(rng.coin() ? Rational(s / 2) : Rational(-s / 2));
    cfg.b.push_back(s / 2);
  }
  cfg.delta.push_back(cfg.bnorm);
  Rational d = delta2;
  for (std::size_t k = 0; k < tail; ++k, d *= q) cfg.delta.push_back(d);
  cfg.validate();
  return cfg;
}

P11Config p11_slow_decay(Rng& rng, std::size_t tail) {
  P11Config cfg = p11_geometric(rng, 0);
  const Rational q = make_rational(1, 4);
  const Rational delta2 = cfg.eps * cfg.bnorm * (1 - q) / 2;
  const Rational t = make_rational(9, 10) * delta2 / (3 * (1 + cfg.eps));
  for (std::size_t j = 1; j <= tail; ++j) {
    const Rational s = t / static_cast<long>(j);
    cfg.a.push_back(s / 2);
    cfg.b.push_back(s / 2);
  }
  Rational d = delta2;
  for (std::size_t k = 0; k < tail; ++k, d *= q) cfg.delta.push_back(d);
  cfg.validate();
  return cfg;
}

std::vector<Branch> p11_branches(Rng& rng, std::size_t count, int depth) {
  std::size_t width = 0;
  while ((std::size_t{1} << width) < count) ++width;
  if (static_cast<std::size_t>(depth) <= width) throw InputError("p11 branches: depth too small for the index code");
  std::vector<Branch> out;
  for (std::size_t i = 0; i < count; ++i) {
    std::string bits;
    for (std::size_t b = width; b > 0; --b) bits.push_back(((i >> (b - 1)) & 1U) ? '1' : '0');
    out.emplace_back(bits + random_bits(rng, static_cast<std::size_t>(depth) - width));
  }
  return out;
}

std::vector<Segment> segments_through(Rng& rng, const std::vector<NodeKey>& nodes, int depth) {
  std::vector<Segment> out;
  for (NodeKey n : nodes) {
    // Highest admissible top: just below the deepest ancestor shared with another node.
    NodeKey limit = n;
    while (parent_of(limit) >= 1 &&
           std::none_of(nodes.begin(), nodes.end(), [&](NodeKey m) { return m != n && precedes(parent_of(limit), m); })) {
      limit = parent_of(limit);
    }
    NodeKey top = n;
    while (top != limit && rng.coin()) top = parent_of(top);
    NodeKey bottom = n;
    while (level_of(bottom) < depth && rng.coin()) bottom = rng.coin() ? right_child(bottom) : left_child(bottom);
    out.emplace_back(top, bottom);
  }
  return out;
}

std::vector<DualVector> unit_dual_terms(Rng& rng, std::size_t terms, int depth) {
  if (terms == 0 || terms > static_cast<std::size_t>(depth) + 1) {
    throw InputError("unit dual terms: need 1 <= terms <= depth + 1");
  }
  // Reuse the level-band layout of level_block and place each term inside its band.
  const LevelBlockSequence layout = level_block(rng, terms, depth);
  std::vector<DualVector> out;
  for (const auto& x : layout.terms) {
    const int lo = min_level(x);
    const int hi = max_level(x);
    std::vector<NodeKey> nodes;
    for (const auto& [k, v] : x) {
      if (std::all_of(nodes.begin(), nodes.end(), [&](NodeKey m) { return incomparable(m, k); })) nodes.push_back(k);
    }
    DualVector f(depth);
    if (nodes.size() >= 2 && rng.coin()) {
      // Two segments through incomparable nodes, weighted (3/5, 4/5), kept inside the band.
      auto segs = segments_through(rng, {nodes[0], nodes[1]}, depth);
      const Rational w[2] = {make_rational(rng.coin() ? 3 : -3, 5), make_rational(rng.coin() ? 4 : -4, 5)};
      for (int i = 0; i < 2; ++i) {
        for (NodeKey k : segs[i].members()) {
          if (level_of(k) >= lo && level_of(k) <= hi) f.set(k, w[i]);
        }
      }
      out.push_back(std::move(f));
      continue;
    }
    NodeKey bottom = nodes.front();
    NodeKey top = bottom;
    while (level_of(top) > lo && rng.coin()) top = parent_of(top);
    while (level_of(bottom) < hi && rng.coin()) bottom = rng.coin() ? right_child(bottom) : left_child(bottom);
    const Rational sign = rng.coin() ? 1 : -1;
    for (NodeKey k : Segment(top, bottom).members()) f.set(k, sign);
    out.push_back(std::move(f));
  }
  return out;
}

}  // namespace jtree::gen
