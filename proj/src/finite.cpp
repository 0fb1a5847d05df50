#include "tfg/finite.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace tfg {

namespace {

using Perm = std::vector<std::size_t>;

Perm id_perm(std::size_t q) {
  Perm p(q);
  std::iota(p.begin(), p.end(), 0);
  return p;
}

Perm comp(const Perm& f, const Perm& g) {  // f after g
  Perm out(g.size());
  for (std::size_t a = 0; a < g.size(); ++a) out[a] = f[g[a]];
  return out;
}

Perm inv(const Perm& f) {
  Perm out(f.size());
  for (std::size_t a = 0; a < f.size(); ++a) out[f[a]] = a;
  return out;
}

bool is_id(const Perm& f) {
  for (std::size_t a = 0; a < f.size(); ++a) {
    if (f[a] != a) return false;
  }
  return true;
}

}  // namespace

FinitePermutation FinitePermutation::identity(std::size_t m, std::size_t q) {
  return {m, id_perm(q)};
}

FinitePermutation FinitePermutation::from_images(std::size_t m, Perm images) {
  std::vector<bool> seen(images.size(), false);
  for (std::size_t x : images) {
    if (x >= images.size() || seen[x])
      throw precondition_error("images do not form a permutation");
    seen[x] = true;
  }
  return {m, std::move(images)};
}

FinitePermutation FinitePermutation::compose(const FinitePermutation& other) const {
  if (m != other.m || images.size() != other.images.size())
    throw precondition_error("permutation levels differ");
  return {m, comp(images, other.images)};
}

FinitePermutation FinitePermutation::inverse() const { return {m, inv(images)}; }

FinitePermutation FinitePermutation::power(long e) const {
  Perm base = e < 0 ? inv(images) : images;
  std::size_t k = static_cast<std::size_t>(e < 0 ? -e : e);
  Perm acc = id_perm(images.size());
  while (k > 0) {
    if (k & 1) acc = comp(acc, base);
    k >>= 1;
    if (k > 0) base = comp(base, base);
  }
  return {m, std::move(acc)};
}

bool FinitePermutation::is_identity() const { return is_id(images); }

bool FinitePermutation::is_involution_or_id() const {
  for (std::size_t a = 0; a < images.size(); ++a) {
    if (images[images[a]] != a) return false;
  }
  return true;
}

std::vector<std::size_t> FinitePermutation::support() const {
  std::vector<std::size_t> out;
  for (std::size_t a = 0; a < images.size(); ++a) {
    if (images[a] != a) out.push_back(a);
  }
  return out;
}

FinitePermutation truncate(const GroupElement& g, std::size_t m) {
  const std::vector<Int> images = g.truncate(m);
  Perm out(images.size());
  for (std::size_t a = 0; a < images.size(); ++a) out[a] = to_index(images[a]);
  return FinitePermutation::from_images(m, std::move(out));
}

Json finite_to_json(const FinitePermutation& p) {
  Json images = Json::array();
  for (std::size_t x : p.images) images.push_back(x);
  return Json{{"m", p.m}, {"images", images}};
}

FinitePermutation finite_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("m") || !j.contains("images"))
    throw parse_error("malformed finite permutation");
  Perm images;
  for (const Json& x : j.at("images")) {
    const Int v = int_from_json(x);
    if (v < 0) throw parse_error("negative permutation image");
    images.push_back(to_index(v));
  }
  try {
    return FinitePermutation::from_images(j.at("m").get<std::size_t>(), std::move(images));
  } catch (const precondition_error& e) {
    throw parse_error(e.what());
  }
}

FinitePermutation finite_cycles_lemma(const FinitePermutation& g,
                                      const std::array<std::vector<std::size_t>, 18>& blocks,
                                      const std::array<FinitePermutation, 18>& hs) {
  const std::size_t q = g.size();
  std::vector<bool> in_block0(q, false);
  for (std::size_t x : blocks[0]) in_block0[x] = true;
  for (int k = 0; k < 18; ++k) {
    if (hs[k].size() != q) throw precondition_error("h has the wrong degree");
    if (!hs[k].is_involution_or_id()) throw precondition_error("h is not an involution");
    for (std::size_t x : hs[k].support()) {
      if (!in_block0[x]) throw precondition_error("h is not supported in the first block");
    }
  }
  for (int k = 0; k < 18; ++k) {
    for (std::size_t x : blocks[k]) {
      bool found = false;
      for (std::size_t y : blocks[(k + 1) % 18]) found = found || g.images[x] == y;
      if (!found) throw precondition_error("g does not advance the blocks");
    }
  }
  // Product h_0 ∘ h_1 ∘ ... ∘ h_17 (rightmost applied first) must equal g^18
  // on the first block.
  FinitePermutation prod = FinitePermutation::identity(g.m, q);
  for (int k = 17; k >= 0; --k) prod = hs[k].compose(prod);
  const FinitePermutation g18 = g.power(18);
  for (std::size_t x : blocks[0]) {
    if (prod.images[x] != g18.images[x])
      throw precondition_error("the h product differs from g^18 on the first block");
  }
  FinitePermutation d = FinitePermutation::identity(g.m, q);
  FinitePermutation gk = FinitePermutation::identity(g.m, q);
  for (int k = 0; k < 18; ++k) {
    const FinitePermutation dk = gk.compose(hs[k].inverse()).compose(gk.inverse());
    d = d.compose(dk);
    gk = g.compose(gk);
  }
  if (!d.is_involution_or_id()) throw precondition_error("d failed to be an involution");
  if (!g.compose(d).power(18).is_identity())
    throw precondition_error("(g*d)^18 is not the identity");
  return d;
}

namespace {

struct BlockSetup {
  Perm b;                      // involution with g = b * shift
  std::vector<std::size_t> cycle;  // the long g-cycle in order
};

/// Builds b swapping x <-> x+1 for every x in `swap_starts`; the starts must
/// be pairwise non-adjacent mod q.
Perm swaps(std::size_t q, const std::vector<std::size_t>& swap_starts) {
  Perm b = id_perm(q);
  for (std::size_t x : swap_starts) {
    const std::size_t y = (x + 1) % q;
    b[x] = y;
    b[y] = x;
  }
  return b;
}

std::vector<std::size_t> long_cycle_from(const Perm& g, std::size_t start) {
  std::vector<std::size_t> cycle;
  std::size_t a = start;
  do {
    cycle.push_back(a);
    a = g[a];
  } while (a != start);
  return cycle;
}

}  // namespace

Certificate finite_three_involutions(SpecPtr spec, std::size_t m) {
  const Int qm = spec->modulus(m);
  if (qm < 36) throw precondition_error("the level modulus is below 36");
  const std::size_t q = to_index(qm);
  Perm shift(q);
  for (std::size_t a = 0; a < q; ++a) shift[a] = (a + 1) % q;

  // Either an exact 18/19-gap tower (the shift acts as an 18-cycle on blocks
  // after skipping the leftover set B) or, when q is not of the form
  // 18u + 19v, a fallback with isolated fixed points.
  const std::size_t v = q % 18;
  const bool tower_route = 19 * v <= q;
  std::vector<std::size_t> swap_starts;
  if (tower_route) {
    // A-points at gaps of 19 (v of them) then 18; B = {p + 18} inside each
    // 19-gap, so b swaps B with B+1 ⊆ A.
    std::size_t pos = 0;
    for (std::size_t i = 0; i < v; ++i) {
      swap_starts.push_back(pos + 18);
      pos += 19;
    }
  } else {
    // Alternating fixed points 0, 2, ..., 2(v-1); g skips them.
    for (std::size_t i = 0; i < v; ++i) swap_starts.push_back(2 * i);
  }
  const Perm b = swaps(q, swap_starts);
  const Perm g = comp(b, shift);

  // The support of g is a single cycle of length 18c.
  std::size_t start = 0;
  while (g[start] == start) ++start;
  const std::vector<std::size_t> cycle = long_cycle_from(g, start);
  if (cycle.size() % 18 != 0 || cycle.size() + swap_starts.size() != q)
    throw precondition_error("unexpected cycle structure");
  const std::size_t c = cycle.size() / 18;

  std::array<std::vector<std::size_t>, 18> blocks;
  for (std::size_t i = 0; i < cycle.size(); ++i) blocks[i % 18].push_back(cycle[i]);

  // zeta = g^18 on the first block is the c-cycle e_j -> e_{j+1} with
  // e_j = cycle[18*j]; h_0(j) = 1-j and h_1(j) = -j factor it.
  const auto e = [&](std::size_t j) { return cycle[18 * (j % c)]; };
  std::array<FinitePermutation, 18> hs;
  for (int k = 0; k < 18; ++k) hs[k] = FinitePermutation::identity(m, q);
  for (std::size_t j = 0; j < c; ++j) {
    hs[0].images[e(j)] = e((1 + c - j % c) % c);
    hs[1].images[e(j)] = e((c - j % c) % c);
  }
  const FinitePermutation gp = FinitePermutation::from_images(m, g);
  const FinitePermutation d = finite_cycles_lemma(gp, blocks, hs);
  const FinitePermutation gd = gp.compose(d);

  // Grid coordinates: P(k, j) = (gd)^k(e_j).  Any t of the form
  // P(k,j) -> P(a-k, pi(j)) with pi an involution satisfies t^2 = id and
  // t*(gd)*t = (gd)^{-1}, so s = gd*t is also an involution.
  std::vector<std::vector<std::size_t>> grid(18, std::vector<std::size_t>(c));
  for (std::size_t j = 0; j < c; ++j) {
    std::size_t p = e(j);
    for (std::size_t k = 0; k < 18; ++k) {
      grid[k][j] = p;
      p = gd.images[p];
    }
  }
  const auto reflection = [&](std::size_t a, const std::vector<std::size_t>& pi) {
    FinitePermutation t = FinitePermutation::identity(m, q);
    for (std::size_t k = 0; k < 18; ++k) {
      for (std::size_t j = 0; j < c; ++j) {
        t.images[grid[k][j]] = grid[(a + 18 - k) % 18][pi[j]];
      }
    }
    return t;
  };

  FinitePermutation i1 = FinitePermutation::identity(m, q);
  FinitePermutation i2 = i1, i3 = i1;
  const FinitePermutation bp = FinitePermutation::from_images(m, b);
  bool found = false;
  if (tower_route) {
    // s fixes layer 0 (the A-blocks) and the B fixed points, so it is
    // disjoint from b and w = b*s is an involution; phi = w * t * d.
    std::vector<std::size_t> pi(c);
    std::iota(pi.begin(), pi.end(), 0);
    const FinitePermutation t = reflection(17, pi);
    const FinitePermutation s = reflection(0, pi);
    i1 = bp.compose(s);
    i2 = t;
    i3 = d;
    found = i1.is_involution_or_id();
  } else {
    // b overlaps the blocks here, so group as phi = b * s * (t*d) instead
    // and search the reflection family for a t with (t*d)^2 = id.
    std::vector<std::vector<std::size_t>> candidates;
    std::vector<std::size_t> idp(c);
    std::iota(idp.begin(), idp.end(), 0);
    candidates.push_back(idp);
    if (c % 2 == 0) {
      std::vector<std::size_t> half(c);
      for (std::size_t j = 0; j < c; ++j) half[j] = (j + c / 2) % c;
      candidates.push_back(half);
    }
    for (std::size_t gamma = 0; gamma < c; ++gamma) {
      std::vector<std::size_t> refl(c);
      for (std::size_t j = 0; j < c; ++j) refl[j] = (gamma + c - j) % c;
      candidates.push_back(refl);
    }
    for (std::size_t a = 0; a < 18 && !found; ++a) {
      for (const auto& pi : candidates) {
        const FinitePermutation t = reflection(a, pi);
        const FinitePermutation td = t.compose(d);
        if (td.is_involution_or_id()) {
          i1 = bp;
          i2 = gd.compose(t);
          i3 = td;
          found = true;
          break;
        }
      }
    }
  }
  if (!found)
    throw precondition_error("no involution grouping exists for this modulus");

  Certificate cert{CertKind::FiniteThreeInvolutions, std::move(spec), std::nullopt,
                   std::nullopt,  {},                Json::object()};
  cert.side_data["m"] = m;
  cert.side_data["i1"] = finite_to_json(i1);
  cert.side_data["i2"] = finite_to_json(i2);
  cert.side_data["i3"] = finite_to_json(i3);
  cert.side_data["g"] = finite_to_json(gp);
  cert.side_data["d"] = finite_to_json(d);
  cert.side_data["b"] = finite_to_json(bp);
  const VerifyResult check = verify(cert);
  if (!check.ok) throw precondition_error("construction failed: " + check.message);
  return cert;
}

namespace {

/// All permutations of [0, q), q <= 8, in lexicographic order; cached since
/// the exhaustive check runs over many involutions of the same degree.
const std::vector<Perm>& symmetric_group(std::size_t q) {
  static std::map<std::size_t, std::vector<Perm>> cache;
  auto it = cache.find(q);
  if (it == cache.end()) {
    Perm p = id_perm(q);
    std::vector<Perm> out;
    do {
      out.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    it = cache.emplace(q, std::move(out)).first;
  }
  return it->second;
}

bool commutes(const Perm& a, const Perm& b) {
  for (std::size_t x = 0; x < a.size(); ++x) {
    if (a[b[x]] != b[a[x]]) return false;
  }
  return true;
}

}  // namespace

LocalSubgroupReport local_subgroup_check(const FinitePermutation& pi) {
  const std::size_t q = pi.size();
  if (q > 8) throw precondition_error("exhaustive check limited to degree 8");
  if (!pi.is_involution_or_id() || pi.is_identity())
    throw precondition_error("pi must be a non-identity involution");
  const std::vector<Perm>& all = symmetric_group(q);
  const Perm& p = pi.images;

  std::vector<Perm> c_pi;
  for (const Perm& g : all) {
    if (commutes(g, p)) c_pi.push_back(g);
  }
  std::vector<Perm> u_pi;
  for (const Perm& g : c_pi) {
    if (!is_id(comp(g, g))) continue;
    bool good = true;
    for (const Perm& h : c_pi) {
      if (!commutes(g, comp(comp(h, g), inv(h)))) {
        good = false;
        break;
      }
    }
    if (good) u_pi.push_back(g);
  }
  std::vector<Perm> v_pi;
  for (const Perm& g : all) {
    bool central = true;
    for (const Perm& h : u_pi) {
      if (!commutes(g, h)) {
        central = false;
        break;
      }
    }
    if (central) v_pi.push_back(g);
  }
  std::set<Perm> s_set;
  for (const Perm& g : v_pi) s_set.insert(comp(g, g));
  const std::vector<Perm> s_pi(s_set.begin(), s_set.end());

  LocalSubgroupReport report;
  report.chain_valid = true;
  for (const Perm& g : v_pi) {
    if (!commutes(g, p)) report.chain_valid = false;  // V ⊆ C since pi ∈ U
  }
  for (const Perm& g : s_pi) {
    for (std::size_t x = 0; x < q; ++x) {
      if (g[x] != x && p[x] != x) report.chain_valid = false;  // S off supp(pi)
    }
  }

  std::size_t w_count = 0;
  std::size_t stab_count = 0;
  bool matches = true;
  for (const Perm& g : all) {
    bool in_w = true;
    for (const Perm& h : s_pi) {
      if (!commutes(g, h)) {
        in_w = false;
        break;
      }
    }
    bool in_stab = true;
    for (std::size_t x = 0; x < q; ++x) {
      if (p[x] == x && g[x] != x) in_stab = false;
    }
    if (in_w) ++w_count;
    if (in_stab) ++stab_count;
    if (in_w != in_stab) matches = false;
  }
  report.matches = matches;
  report.w_size = w_count;
  report.stabilizer_size = stab_count;
  return report;
}

bool truncation_coherence(const GroupElement& g, std::size_t m1, std::size_t m2) {
  if (m1 < g.level()) throw precondition_error("m1 is below the element's level");
  if (m2 < m1) throw precondition_error("m2 must be at least m1");
  const FinitePermutation a = truncate(g, m1);
  const FinitePermutation b = truncate(g, m2);
  const std::size_t q1 = a.size();
  for (std::size_t x = 0; x < b.size(); ++x) {
    if (b.images[x] % q1 != a.images[x % q1]) return false;
  }
  return true;
}

}  // namespace tfg
