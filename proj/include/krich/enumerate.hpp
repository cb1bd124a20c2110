#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <thread>
#include <unordered_map>
#include <utility>
#include <vector>

#include "krich/error.hpp"
#include "krich/flat.hpp"
#include "krich/point.hpp"
#include "krich/rational.hpp"
#include "krich/sphere.hpp"
#include "krich/transforms.hpp"

namespace krich::richenum {

using exactgeom::CoSphere;
using exactgeom::Flat;
using exactgeom::Sphere;

// --- result types ---------------------------------------------------------

struct FlatMember {
    Flat flat;
    std::vector<std::size_t> members;  // sorted point indices
    std::size_t count() const { return members.size(); }
};

struct SphereMember {
    Sphere sphere;
    std::vector<std::size_t> members;
    std::size_t count() const { return members.size(); }
};

struct FlatWitness {
    Flat flat;
    std::vector<std::size_t> members;
};

struct SphereWitness {
    CoSphere sphere;
    std::vector<std::size_t> members;
};

/// k-rich enumeration result for hyperplanes or (t-1)-flats. Members are the
/// spanned rich objects in canonical byte order; the witness, when present,
/// is a codimension-2 (relative to the member kind) flat through which
/// infinitely many rich objects pass.
struct RichFlatFamily {
    std::size_t object_dim = 0;
    std::size_t k = 0;
    std::vector<FlatMember> members;
    std::optional<FlatWitness> infinite_witness;
};

struct RichSphereFamily {
    std::size_t k = 0;
    std::vector<SphereMember> members;
    std::optional<SphereWitness> infinite_witness;
};

struct RichestFlat {
    Flat flat;
    std::vector<std::size_t> members;
    std::size_t count() const { return members.size(); }
};

struct RichestSphere {
    std::optional<CoSphere> sphere;  // absent when no subset spans one
    std::vector<std::size_t> members;
    std::size_t count = 0;
};

// --- subset iteration -------------------------------------------------------
//
// All heavy loops walk size-m subsets of [0, n) in colexicographic order.
// Rank arithmetic makes the work splittable into contiguous blocks, one per
// worker, so results can be merged deterministically no matter how many
// threads ran.

inline Integer binomial(std::size_t n, std::size_t m) {
    if (m > n) return 0;
    m = std::min(m, n - m);
    Integer r = 1;
    for (std::size_t i = 1; i <= m; ++i) {
        r *= Integer(n - m + i);
        r /= Integer(i);
    }
    return r;
}

namespace detail_enum {

inline std::uint64_t subset_count_checked(std::size_t n, std::size_t m) {
    Integer total = binomial(n, m);
    detail::require(total <= Integer(std::uint64_t(1) << 62),
                    "subset space too large to enumerate");
    return total.convert_to<std::uint64_t>();
}

/// Largest colex rank below `rank` decomposed into the subset it names:
/// rank = sum_i C(idx[i], i+1) with idx strictly increasing.
inline void unrank_colex(std::uint64_t rank, std::size_t n, std::size_t m,
                         std::vector<std::size_t>& idx) {
    idx.resize(m);
    Integer r = rank;
    std::size_t hi = n;
    for (std::size_t j = m; j > 0; --j) {
        std::size_t c = hi;
        while (c > 0 && binomial(c - 1, j) > r) --c;
        // now C(c-1, j) <= r < C(c, j), so element j-1 is c-1
        detail::ensure(c > 0, "colex unrank underflow");
        idx[j - 1] = c - 1;
        r -= binomial(c - 1, j);
        hi = c - 1;
    }
    detail::ensure(r == 0, "colex unrank residue");
}

/// Colex successor; false once the last subset has been consumed.
inline bool advance_colex(std::vector<std::size_t>& idx, std::size_t n) {
    const std::size_t m = idx.size();
    for (std::size_t i = 0; i < m; ++i) {
        std::size_t limit = (i + 1 < m) ? idx[i + 1] : n;
        if (idx[i] + 1 < limit) {
            ++idx[i];
            for (std::size_t j = 0; j < i; ++j) idx[j] = j;
            return true;
        }
    }
    return false;
}

/// Runs body(state, subset) over every size-m subset of [0, n), split into
/// one contiguous colex block per worker. Returns the per-worker states in
/// worker order; the caller merges them (merge must be order-insensitive for
/// byte-stable output, which all users here guarantee by set semantics).
template <class State, class Body>
std::vector<State> run_subset_workers(std::size_t n, std::size_t m, std::size_t threads,
                                      const Body& body) {
    const std::uint64_t total = subset_count_checked(n, m);
    std::size_t workers = std::max<std::size_t>(1, threads);
    if (total < workers) workers = std::max<std::uint64_t>(1, total);
    std::vector<State> states(workers);
    if (total == 0) return states;

    auto run_block = [&](std::size_t w) {
        const std::uint64_t lo = static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(total) * w) / workers);
        const std::uint64_t hi = static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(total) * (w + 1)) / workers);
        if (lo >= hi) return;
        std::vector<std::size_t> idx;
        unrank_colex(lo, n, m, idx);
        for (std::uint64_t r = lo; r < hi; ++r) {
            body(states[w], idx);
            if (r + 1 < hi) advance_colex(idx, n);
        }
    };

    if (workers == 1) {
        run_block(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(run_block, w);
        for (std::thread& th : pool) th.join();
    }
    return states;
}

}  // namespace detail_enum

// --- spanned-flat accumulation ----------------------------------------------

/// Enumerates the affine hulls of all size-m subsets, keyed by canonical
/// form, accumulating the generating subsets' indices. After the final
/// sort-unique each entry's member list is exactly P intersected with the
/// flat: any point q on such a flat extends to an affine basis drawn from
/// the points on it, padded to size m, so some generating subset contains q.
/// `required_dim` keeps only hulls of that exact dimension.
inline std::vector<FlatMember> spanned_flats_members(const PointSet& ps,
                                                     std::size_t subset_size,
                                                     std::optional<std::size_t> required_dim,
                                                     std::size_t threads = 1) {
    detail::require(subset_size >= 1 && subset_size <= ps.dim,
                    "spanned_flats_members: subset size must be in [1, dim]");
    using State = std::unordered_map<std::string, std::pair<Flat, std::vector<std::size_t>>>;
    const std::size_t n = ps.points.size();
    std::vector<FlatMember> out;
    if (n < subset_size) return out;

    std::vector<State> states = detail_enum::run_subset_workers<State>(
        n, subset_size, threads, [&](State& state, const std::vector<std::size_t>& idx) {
            std::optional<Flat> hull = exactgeom::affine_hull_indexed(ps, idx);
            detail::ensure(hull.has_value(), "subset of <= dim points spans the full space");
            if (required_dim && hull->dim() != *required_dim) return;
            auto [it, fresh] = state.try_emplace(hull->canonical_key());
            if (fresh) it->second.first = std::move(*hull);
            auto& mem = it->second.second;
            mem.insert(mem.end(), idx.begin(), idx.end());
        });

    State& merged = states[0];
    for (std::size_t w = 1; w < states.size(); ++w) {
        for (auto& [key, payload] : states[w]) {
            auto [it, fresh] = merged.try_emplace(key);
            if (fresh) {
                it->second = std::move(payload);
            } else {
                auto& mem = it->second.second;
                mem.insert(mem.end(), payload.second.begin(), payload.second.end());
            }
        }
        states[w].clear();
    }

    out.reserve(merged.size());
    for (auto& [key, payload] : merged) {
        auto& mem = payload.second;
        std::sort(mem.begin(), mem.end());
        mem.erase(std::unique(mem.begin(), mem.end()), mem.end());
        out.push_back(FlatMember{std::move(payload.first), std::move(mem)});
    }
    std::sort(out.begin(), out.end(), [](const FlatMember& a, const FlatMember& b) {
        return a.flat.canonical_key() < b.flat.canonical_key();
    });
    return out;
}

/// All hyperplanes spanned by d affinely independent points of P, each with
/// its exact incidence count and member indices, in canonical order.
inline std::vector<FlatMember> enumerate_spanned_hyperplanes(const PointSet& ps,
                                                             std::size_t threads = 1) {
    validate_pointset(ps);
    detail::require(ps.dim >= 2, "enumerate_spanned_hyperplanes needs dimension >= 2");
    if (ps.points.size() < ps.dim) return {};
    return spanned_flats_members(ps, ps.dim, ps.dim - 1, threads);
}

// --- richest codimension-2 (and lower) searches ------------------------------

/// Brute-force richest flat of dimension <= s: hulls of all min(n, s+1)-point
/// subsets carry every candidate, and member accumulation makes each
/// candidate's count exact. Ties break toward the smallest canonical key so
/// the result is independent of scheduling.
inline RichestFlat richest_subflat(const PointSet& ps, std::size_t s,
                                   std::size_t threads = 1) {
    validate_pointset(ps);
    detail::require(ps.dim >= 2 && s <= ps.dim - 2,
                    "richest_subflat: target dimension must be <= dim - 2");
    const std::size_t subset_size = std::min(ps.points.size(), s + 1);
    std::vector<FlatMember> flats =
        spanned_flats_members(ps, subset_size, std::nullopt, threads);
    detail::ensure(!flats.empty(), "point set yields no flats");
    // Ties on the count go to the lexicographically least member-index list,
    // i.e. the maximizer seen earliest in point order. Canonical byte order
    // would be arbitrary here: on coordinate-symmetric inputs it favors
    // whichever equation happens to serialize first.
    const FlatMember* best = &flats[0];
    for (const FlatMember& fm : flats)
        if (fm.members.size() > best->members.size() ||
            (fm.members.size() == best->members.size() && fm.members < best->members))
            best = &fm;
    return RichestFlat{best->flat, best->members};
}

/// Richest (d-2)-sphere, searched through the lifting: non-vertical
/// (d-1)-flats of R^{d+1} spanned by lifted d-subsets are exactly the lifted
/// images of (d-2)-spheres through d of the points. When every d-subset
/// lifts vertically (e.g. collinear configurations) no sphere is spanned and
/// the trivial bound min(n, 2) is reported with no representative.
inline RichestSphere richest_subsphere(const PointSet& ps, std::size_t threads = 1) {
    validate_pointset(ps);
    detail::require(ps.dim >= 3, "richest_subsphere needs dimension >= 3");
    detail::require(ps.points.size() >= ps.dim, "richest_subsphere needs at least d points");
    const PointSet lifted = transforms::lift(ps);
    std::vector<FlatMember> flats =
        spanned_flats_members(lifted, ps.dim, ps.dim - 1, threads);
    const FlatMember* best = nullptr;
    for (const FlatMember& fm : flats) {
        if (exactgeom::is_vertical(fm.flat)) continue;
        // Same tie-break as richest_subflat: least member-index list.
        if (!best || fm.members.size() > best->members.size() ||
            (fm.members.size() == best->members.size() && fm.members < best->members))
            best = &fm;
    }
    if (!best) return RichestSphere{std::nullopt, {}, std::min<std::size_t>(ps.points.size(), 2)};
    return RichestSphere{transforms::cosphere_from_lifted(best->flat), best->members,
                         best->members.size()};
}

// --- k-rich enumeration -------------------------------------------------------

namespace detail_enum {

/// Scaled copy of a rational point set: every coordinate multiplied by the
/// common denominator L, which maps the hyperplane a.x = b of the original
/// space to a.y = L b of the scaled one, bijectively.
struct ScaledPoints {
    Integer scale = 1;
    bool fits64 = false;                              // dim == 3 and small coords
    std::vector<std::array<std::int64_t, 3>> pts64;   // populated when fits64
};

inline constexpr std::int64_t kFast64Bound = std::int64_t(1) << 19;

inline ScaledPoints scale_to_integers(const PointSet& ps) {
    ScaledPoints out;
    for (const Point& p : ps.points)
        for (const Rational& x : p) out.scale = boost::multiprecision::lcm(out.scale, den(x));
    if (ps.dim != 3) return out;
    out.pts64.reserve(ps.points.size());
    for (const Point& p : ps.points) {
        std::array<std::int64_t, 3> q{};
        for (std::size_t j = 0; j < 3; ++j) {
            Integer v = num(p[j]) * (out.scale / den(p[j]));
            if (boost::multiprecision::abs(v) > kFast64Bound) return out;
            q[j] = v.convert_to<std::int64_t>();
        }
        out.pts64.push_back(q);
    }
    out.fits64 = true;
    return out;
}

struct Key64 {
    std::array<std::int64_t, 4> v;
    friend bool operator==(const Key64& a, const Key64& b) { return a.v == b.v; }
};

struct Key64Hash {
    std::size_t operator()(const Key64& k) const {
        std::uint64_t h = 0x9e3779b97f4a7c15ULL;
        for (std::int64_t x : k.v) {
            std::uint64_t z = h ^ static_cast<std::uint64_t>(x);
            z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
            z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
            h = z ^ (z >> 31);
        }
        return static_cast<std::size_t>(h);
    }
};

/// d = 3 hot path: spanning-triple counting with int64 cross products.
/// Coordinates are bounded by kFast64Bound, so cross-product entries stay
/// under 2^39 and the right-hand sides under 2^60; nothing can overflow.
/// Each key is the primitive integer form of a plane (gcd 1, first nonzero
/// coefficient positive), so distinct keys are distinct planes.
inline std::vector<FlatMember> k_rich_planes_fast(const PointSet& ps,
                                                  const ScaledPoints& sp, std::size_t k,
                                                  std::size_t threads) {
    using Map = std::unordered_map<Key64, std::uint32_t, Key64Hash>;
    const auto& pts = sp.pts64;
    const std::size_t n = pts.size();

    std::vector<Map> states = run_subset_workers<Map>(
        n, 3, threads, [&](Map& state, const std::vector<std::size_t>& idx) {
            const auto& p0 = pts[idx[0]];
            const auto& p1 = pts[idx[1]];
            const auto& p2 = pts[idx[2]];
            const std::int64_t ax = p1[0] - p0[0], ay = p1[1] - p0[1], az = p1[2] - p0[2];
            const std::int64_t bx = p2[0] - p0[0], by = p2[1] - p0[1], bz = p2[2] - p0[2];
            std::int64_t nx = ay * bz - az * by;
            std::int64_t ny = az * bx - ax * bz;
            std::int64_t nz = ax * by - ay * bx;
            if (nx == 0 && ny == 0 && nz == 0) return;  // collinear triple
            std::int64_t rhs = nx * p0[0] + ny * p0[1] + nz * p0[2];
            std::uint64_t g = std::gcd(std::gcd(static_cast<std::uint64_t>(nx < 0 ? -nx : nx),
                                                static_cast<std::uint64_t>(ny < 0 ? -ny : ny)),
                                       std::gcd(static_cast<std::uint64_t>(nz < 0 ? -nz : nz),
                                                static_cast<std::uint64_t>(rhs < 0 ? -rhs : rhs)));
            const std::int64_t gi = static_cast<std::int64_t>(g);
            nx /= gi, ny /= gi, nz /= gi, rhs /= gi;
            const std::int64_t lead = nx != 0 ? nx : (ny != 0 ? ny : nz);
            if (lead < 0) nx = -nx, ny = -ny, nz = -nz, rhs = -rhs;
            ++state[Key64{{nx, ny, nz, rhs}}];
        });

    Map& merged = states[0];
    for (std::size_t w = 1; w < states.size(); ++w) {
        for (const auto& [key, cnt] : states[w]) merged[key] += cnt;
        states[w].clear();
    }

    // A plane with c points has spanning-triple count >= c/3: every point on
    // it extends to an affinely independent triple within the plane's point
    // set, and each triple covers three points. So candidates below
    // ceil(k/3) can be discarded before the exact recount.
    const std::uint32_t cmin = static_cast<std::uint32_t>((k + 2) / 3);
    std::vector<FlatMember> out;
    for (const auto& [key, cnt] : merged) {
        if (cnt < cmin) continue;
        std::vector<std::size_t> members;
        for (std::size_t i = 0; i < n; ++i) {
            const auto& p = pts[i];
            if (key.v[0] * p[0] + key.v[1] * p[1] + key.v[2] * p[2] == key.v[3])
                members.push_back(i);
        }
        if (members.size() < k) continue;
        exactgeom::Row row{Rational(key.v[0]), Rational(key.v[1]), Rational(key.v[2]),
                           Rational(Integer(key.v[3]), sp.scale)};
        out.push_back(FlatMember{exactgeom::make_hyperplane(3, std::move(row)),
                                 std::move(members)});
    }
    std::sort(out.begin(), out.end(), [](const FlatMember& a, const FlatMember& b) {
        return a.flat.canonical_key() < b.flat.canonical_key();
    });
    return out;
}

inline std::vector<FlatMember> k_rich_hyperplane_members(const PointSet& ps, std::size_t k,
                                                         std::size_t threads) {
    if (ps.points.size() < ps.dim) return {};
    if (ps.dim == 3) {
        ScaledPoints sp = scale_to_integers(ps);
        if (sp.fits64) return k_rich_planes_fast(ps, sp, k, threads);
    }
    std::vector<FlatMember> all = spanned_flats_members(ps, ps.dim, ps.dim - 1, threads);
    std::erase_if(all, [&](const FlatMember& fm) { return fm.members.size() < k; });
    return all;
}

}  // namespace detail_enum

/// All spanned k-rich hyperplanes plus, when some (d-2)-flat carries k or
/// more points, that flat as the witness that infinitely many k-rich
/// hyperplanes exist (every hyperplane through it qualifies).
inline RichFlatFamily k_rich_hyperplanes(const PointSet& ps, std::size_t k,
                                         std::size_t threads = 1) {
    validate_pointset(ps);
    detail::require(ps.dim >= 2, "k_rich_hyperplanes needs dimension >= 2");
    detail::require(k >= ps.dim, "k_rich_hyperplanes needs k >= d");
    RichFlatFamily fam;
    fam.object_dim = ps.dim - 1;
    fam.k = k;
    fam.members = detail_enum::k_rich_hyperplane_members(ps, k, threads);
    RichestFlat rich = richest_subflat(ps, ps.dim - 2, threads);
    if (rich.members.size() >= k)
        fam.infinite_witness = FlatWitness{std::move(rich.flat), std::move(rich.members)};
    return fam;
}

/// All spanned k-rich (t-1)-flats; t = d coincides with the hyperplane case
/// and is delegated so both produce identical bytes.
inline RichFlatFamily k_rich_flats(const PointSet& ps, std::size_t t, std::size_t k,
                                   std::size_t threads = 1) {
    validate_pointset(ps);
    detail::require(t >= 3 && t <= ps.dim, "k_rich_flats needs 3 <= t <= d");
    detail::require(k >= t, "k_rich_flats needs k >= t");
    if (t == ps.dim) return k_rich_hyperplanes(ps, k, threads);
    RichFlatFamily fam;
    fam.object_dim = t - 1;
    fam.k = k;
    if (ps.points.size() >= t) {
        fam.members = spanned_flats_members(ps, t, t - 1, threads);
        std::erase_if(fam.members,
                      [&](const FlatMember& fm) { return fm.members.size() < k; });
    }
    RichestFlat rich = richest_subflat(ps, t - 2, threads);
    if (rich.members.size() >= k)
        fam.infinite_witness = FlatWitness{std::move(rich.flat), std::move(rich.members)};
    return fam;
}

/// All spanned k-rich (d-1)-spheres via lifting: spanned non-vertical
/// hyperplanes of the lifted point set in R^{d+1} are exactly the spheres
/// spanned by d+1 of the original points, with matching incidence sets.
/// Vertical spanned hyperplanes descend to hyperplanes of R^d and are not
/// spheres; they are skipped. The witness is a (d-2)-sphere carrying k or
/// more points, which for d = 2 cannot exist (a 0-sphere holds two points
/// and k >= d+1 = 3).
inline RichSphereFamily k_rich_spheres(const PointSet& ps, std::size_t k,
                                       std::size_t threads = 1) {
    validate_pointset(ps);
    detail::require(ps.dim >= 2, "k_rich_spheres needs dimension >= 2");
    detail::require(k >= ps.dim + 1, "k_rich_spheres needs k >= d+1");
    RichSphereFamily fam;
    fam.k = k;
    const PointSet lifted = transforms::lift(ps);
    if (ps.points.size() >= ps.dim + 1) {
        std::vector<FlatMember> hyps =
            spanned_flats_members(lifted, ps.dim + 1, ps.dim, threads);
        for (FlatMember& fm : hyps) {
            if (fm.members.size() < k || exactgeom::is_vertical(fm.flat)) continue;
            auto section = transforms::unlift_hyperplane(fm.flat);
            fam.members.push_back(SphereMember{std::get<Sphere>(std::move(section)),
                                               std::move(fm.members)});
        }
        std::sort(fam.members.begin(), fam.members.end(),
                  [](const SphereMember& a, const SphereMember& b) {
                      return a.sphere.canonical_key() < b.sphere.canonical_key();
                  });
    }
    if (ps.dim >= 3 && ps.points.size() >= ps.dim) {
        RichestSphere rich = richest_subsphere(ps, threads);
        if (rich.sphere && rich.count >= k)
            fam.infinite_witness =
                SphereWitness{std::move(*rich.sphere), std::move(rich.members)};
    }
    return fam;
}

// --- incidence counting and the explicit-constant bound ----------------------

/// Exact incidence statistics for a point set against a finite object
/// family, with the two sides of the pair-counting bound: a (d-2)-object can
/// host at most ell points common to two family members, so the incidence
/// graph has no K_{ell+1,2} and cherries are bounded by ell * C(m, 2).
struct IncidenceReport {
    std::size_t n = 0;
    std::size_t m = 0;
    Integer total = 0;  // I
    std::size_t ell = 0;
    Integer cherry_lhs = 0;   // sum over points of C(deg, 2)
    Integer cherry_rhs = 0;   // ell * C(m, 2)
    Integer product_lhs = 0;  // I * (I - n)
    Integer product_rhs = 0;  // ell * m * (m-1) * n
    bool product_applicable = false;  // the product form needs I >= n
    bool holds = true;
};

struct Lemma1Audit : IncidenceReport {};

namespace detail_enum {

inline void fill_kst_fields(IncidenceReport& rep, const std::vector<std::size_t>& degrees) {
    const Integer n = rep.n, m = rep.m, ell = rep.ell;
    for (std::size_t deg : degrees) {
        Integer d(deg);
        rep.cherry_lhs += d * (d - 1) / 2;
    }
    rep.cherry_rhs = ell * m * (m - 1) / 2;
    rep.product_applicable = rep.total >= n;
    rep.product_lhs = rep.total * (rep.total - n);
    rep.product_rhs = ell * m * (m - 1) * n;
    rep.holds = rep.cherry_lhs <= rep.cherry_rhs &&
                (!rep.product_applicable || rep.product_lhs <= rep.product_rhs);
}

}  // namespace detail_enum

/// Exact-constant audit of the pair-counting incidence bound for a
/// deduplicated hyperplane family: checks both the cherry form and its
/// convexity consequence I(I-n) <= ell * m(m-1) * n (the latter only when
/// I >= n, where it follows).
inline Lemma1Audit audit_lemma1(const PointSet& ps, const std::vector<Flat>& hyperplanes,
                                std::size_t threads = 1) {
    validate_pointset(ps);
    detail::require(ps.dim >= 2, "audit_lemma1 needs dimension >= 2");
    {
        std::vector<std::string> keys;
        keys.reserve(hyperplanes.size());
        for (const Flat& h : hyperplanes) {
            detail::require(h.is_hyperplane() && h.ambient == ps.dim,
                            "audit_lemma1: hyperplane of matching dimension expected");
            keys.push_back(h.canonical_key());
        }
        std::sort(keys.begin(), keys.end());
        detail::require(std::adjacent_find(keys.begin(), keys.end()) == keys.end(),
                        "audit_lemma1: duplicate hyperplane in family");
    }
    Lemma1Audit rep;
    rep.n = ps.points.size();
    rep.m = hyperplanes.size();
    std::vector<std::size_t> degrees(rep.n, 0);
    for (const Flat& h : hyperplanes) {
        auto [cnt, members] = exactgeom::count_on_flat(ps, h);
        rep.total += cnt;
        for (std::size_t i : members) ++degrees[i];
    }
    rep.ell = richest_subflat(ps, ps.dim - 2, threads).count();
    detail_enum::fill_kst_fields(rep, degrees);
    return rep;
}

/// Incidence statistics of an enumerated family; re-derives every count from
/// the stored member lists and checks the enumeration's own promise
/// I >= m*k.
inline IncidenceReport incidences(const PointSet& ps, const RichFlatFamily& fam,
                                  std::size_t threads = 1) {
    validate_pointset(ps);
    IncidenceReport rep;
    rep.n = ps.points.size();
    rep.m = fam.members.size();
    std::vector<std::size_t> degrees(rep.n, 0);
    for (const FlatMember& fm : fam.members) {
        rep.total += fm.members.size();
        for (std::size_t i : fm.members) ++degrees[i];
    }
    detail::ensure(rep.total >= Integer(rep.m) * Integer(fam.k),
                   "k-rich family with fewer than m*k incidences");
    // Two distinct flats of the member dimension meet in a flat one
    // dimension lower, so that is where the shared-point maximum lives.
    rep.ell = richest_subflat(ps, fam.object_dim - 1, threads).count();
    detail_enum::fill_kst_fields(rep, degrees);
    return rep;
}

inline IncidenceReport incidences(const PointSet& ps, const RichSphereFamily& fam,
                                  std::size_t threads = 1) {
    validate_pointset(ps);
    IncidenceReport rep;
    rep.n = ps.points.size();
    rep.m = fam.members.size();
    std::vector<std::size_t> degrees(rep.n, 0);
    for (const SphereMember& sm : fam.members) {
        rep.total += sm.members.size();
        for (std::size_t i : sm.members) ++degrees[i];
    }
    detail::ensure(rep.total >= Integer(rep.m) * Integer(fam.k),
                   "k-rich family with fewer than m*k incidences");
    if (ps.dim >= 3 && ps.points.size() >= ps.dim)
        rep.ell = richest_subsphere(ps, threads).count;
    else
        rep.ell = std::min<std::size_t>(ps.points.size(), 2);
    detail_enum::fill_kst_fields(rep, degrees);
    return rep;
}

/// Literal K_{ell+1,2}-freeness premise: no two distinct family members
/// share more than ell points of P.
inline bool check_pairwise_intersection_bound(const PointSet& ps,
                                              const std::vector<Flat>& hyperplanes,
                                              std::size_t ell) {
    std::vector<std::vector<std::size_t>> member_sets;
    member_sets.reserve(hyperplanes.size());
    for (const Flat& h : hyperplanes)
        member_sets.push_back(exactgeom::count_on_flat(ps, h).second);
    for (std::size_t a = 0; a < member_sets.size(); ++a) {
        for (std::size_t b = a + 1; b < member_sets.size(); ++b) {
            if (hyperplanes[a] == hyperplanes[b]) continue;
            std::size_t shared = 0, i = 0, j = 0;
            const auto& A = member_sets[a];
            const auto& B = member_sets[b];
            while (i < A.size() && j < B.size()) {
                if (A[i] < B[j])
                    ++i;
                else if (A[i] > B[j])
                    ++j;
                else
                    ++shared, ++i, ++j;
            }
            if (shared > ell) return false;
        }
    }
    return true;
}

}  // namespace krich::richenum
