#include "macc/analysis.hpp"

#include "macc/engine.hpp"
#include "macc/errors.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <numeric>

namespace macc {

namespace {

constexpr std::array<Scheme, 8> kSchemes = {Scheme::ours, Scheme::spe, Scheme::rk,  Scheme::nt,
                                            Scheme::sicps, Scheme::sr1, Scheme::sr2, Scheme::mr};

void check_kz(int K, int z) {
    if (K < 1 || z < 1 || z > K) {
        throw ArgumentError("need K >= 1 and 1 <= z <= K (K=" + std::to_string(K) +
                            ", z=" + std::to_string(z) + ")");
    }
}

Rational frac(std::int64_t num, std::int64_t den) { return make_rational(num, den); }

// Trivially achievable zero-rate memory: every user sees ceil(K/z) caches' worth of content.
Rational zero_rate_memory(int K, int z) { return frac(ceil_div(K, z), K); }

void require(bool ok, const std::string& scheme, const std::string& what) {
    if (!ok) {
        throw ApplicabilityError(scheme + " not applicable: " + what);
    }
}

void check_t_range(Scheme scheme, int K, int z, int t, int lowest) {
    require(t >= lowest && static_cast<std::int64_t>(t) * z <= K, std::string(scheme_name(scheme)),
            "needs " + std::to_string(lowest) + " <= t <= K/z (t=" + std::to_string(t) + ")");
}

Rational lerp(const RatePoint& a, const RatePoint& b, const Rational& x) {
    if (a.memory == b.memory) {
        return std::min(a.rate, b.rate);
    }
    return a.rate + (b.rate - a.rate) * (x - a.memory) / (b.memory - a.memory);
}

// Sorted by memory; keeps the lowest rate per memory value.
std::vector<RatePoint> merge_by_memory(std::vector<RatePoint> points) {
    std::stable_sort(points.begin(), points.end(), [](const RatePoint& a, const RatePoint& b) {
        return a.memory != b.memory ? a.memory < b.memory : a.rate < b.rate;
    });
    std::vector<RatePoint> out;
    for (auto& p : points) {
        if (out.empty() || out.back().memory != p.memory) {
            out.push_back(std::move(p));
        }
    }
    return out;
}

std::optional<Rational> interpolate(const std::vector<RatePoint>& points, const Rational& x) {
    if (points.empty()) {
        return std::nullopt;
    }
    if (x <= points.front().memory) {
        return points.front().rate;
    }
    for (std::size_t k = 1; k < points.size(); ++k) {
        if (x <= points[k].memory) {
            return lerp(points[k - 1], points[k], x);
        }
    }
    return points.back().rate;
}

}  // namespace

std::string_view scheme_name(Scheme scheme) {
    switch (scheme) {
        case Scheme::ours: return "ours";
        case Scheme::spe: return "spe";
        case Scheme::rk: return "rk";
        case Scheme::nt: return "nt";
        case Scheme::sicps: return "sicps";
        case Scheme::sr1: return "sr1";
        case Scheme::sr2: return "sr2";
        case Scheme::mr: return "mr";
    }
    return "?";
}

std::optional<Scheme> parse_scheme(std::string_view name) {
    for (Scheme s : kSchemes) {
        if (scheme_name(s) == name) {
            return s;
        }
    }
    return std::nullopt;
}

std::vector<RatePoint> all_corner_points(int K, int z) {
    check_kz(K, z);
    std::vector<RatePoint> out;
    for (int b = z; b <= K; ++b) {
        if (K % b != 0) {
            continue;
        }
        const int m = K / b;
        for (int t = 1; t <= b; ++t) {
            Rational rate = achievable_rate(b, m, z, t);
            out.push_back({frac(t, b), rate, Scheme::ours, m, b, t});
            if (rate == 0) {
                break;
            }
        }
    }
    return out;
}

std::vector<RatePoint> our_corner_points(int K, int z) {
    std::vector<RatePoint> points = all_corner_points(K, z);
    // Within equal (memory, rate) prefer the smaller subpacketization b^m.
    std::stable_sort(points.begin(), points.end(), [](const RatePoint& a, const RatePoint& b) {
        if (a.memory != b.memory) {
            return a.memory < b.memory;
        }
        if (a.rate != b.rate) {
            return a.rate < b.rate;
        }
        return big_pow(a.b, a.m) < big_pow(b.b, b.m);
    });
    std::vector<RatePoint> out;
    for (auto& p : points) {
        if (!out.empty() && (out.back().memory == p.memory || out.back().rate <= p.rate)) {
            continue;
        }
        out.push_back(std::move(p));
    }
    return out;
}

Curve::Curve(std::vector<RatePoint> vertices) : vertices_(std::move(vertices)) {
    for (std::size_t k = 1; k < vertices_.size(); ++k) {
        if (vertices_[k].memory <= vertices_[k - 1].memory) {
            throw ArgumentError("curve vertices need strictly increasing memory");
        }
    }
}

Rational Curve::evaluate(const Rational& memory) const {
    if (vertices_.empty()) {
        throw ArgumentError("empty curve");
    }
    if (memory < vertices_.front().memory) {
        throw ArgumentError("memory " + to_decimal(memory, 6) + " below the curve's first vertex");
    }
    return *interpolate(vertices_, memory);
}

Curve envelope(std::vector<RatePoint> points) {
    if (points.empty()) {
        throw ArgumentError("envelope of an empty point set");
    }
    points = merge_by_memory(std::move(points));
    // Monotone chain, lower hull; collinear middle points are dropped.
    std::vector<RatePoint> hull;
    for (auto& p : points) {
        while (hull.size() >= 2) {
            const RatePoint& a = hull[hull.size() - 2];
            const RatePoint& b = hull.back();
            Rational cross =
                (b.memory - a.memory) * (p.rate - a.rate) - (b.rate - a.rate) * (p.memory - a.memory);
            if (cross > 0) {
                break;
            }
            hull.pop_back();
        }
        hull.push_back(std::move(p));
    }
    auto zero = std::find_if(hull.begin(), hull.end(), [](const RatePoint& p) { return p.rate == 0; });
    if (zero != hull.end()) {
        hull.erase(zero + 1, hull.end());
    }
    return Curve(std::move(hull));
}

Curve our_envelope(int K, int z) {
    std::vector<RatePoint> points = our_corner_points(K, z);
    points.push_back({frac(0, 1), make_rational(K), Scheme::ours, 0, 0, 0});
    return envelope(std::move(points));
}

Rational sr1_rate(int K, int z, int t2) {
    check_kz(K, z);
    check_t_range(Scheme::sr1, K, z, t2, 1);
    require(std::gcd(t2, K) == 1, "sr1", "gcd(t'', K) must be 1");
    const std::int64_t L = K - static_cast<std::int64_t>(t2) * z;
    const std::int64_t tz = static_cast<std::int64_t>(t2) * z;
    Rational sum = 0;
    std::int64_t start;
    if (L % 2 == 0) {
        start = (L + 2) / 2;
    } else {
        sum += frac(1, 1 + ceil_div(2 * tz, L + 1));
        start = (L + 3) / 2;
    }
    for (std::int64_t r = start; r <= L; ++r) {
        sum += frac(2, 1 + ceil_div(tz, r));
    }
    return sum;
}

Rational rival_rate(Scheme scheme, int K, int z, int t) {
    check_kz(K, z);
    const std::int64_t rest = K - static_cast<std::int64_t>(t) * z;
    switch (scheme) {
        case Scheme::rk:
            check_t_range(scheme, K, z, t, 0);
            return frac(rest * rest, K);
        case Scheme::nt:
            check_t_range(scheme, K, z, t, 0);
            return frac(rest, t + 1);
        case Scheme::sr1:
            return sr1_rate(K, z, t);
        case Scheme::sr2:
            check_t_range(scheme, K, z, t, 1);
            require(K % t == 0, "sr2", "t'' must divide K");
            require(K % (rest + t) == 0, "sr2", "K - t''z + t'' must divide K");
            return frac(rest * (rest + t), 2 * static_cast<std::int64_t>(K));
        case Scheme::mr: {
            // Only defined at M/N = 1/K.
            const std::int64_t w = K - z + 1;
            const std::int64_t den = 2 + z / w + (z - 1) / w;
            return frac(ceil_div(static_cast<std::int64_t>(K) * (K - z), den), K);
        }
        case Scheme::spe:
        case Scheme::sicps:
            throw ApplicabilityError(std::string(scheme_name(scheme)) +
                                     " rate formula is external");
        case Scheme::ours:
            break;
    }
    throw ArgumentError("rival_rate does not cover our scheme; use our_envelope");
}

Subpacketization rival_subpacketization(Scheme scheme, int K, int z, int t) {
    check_kz(K, z);
    const std::int64_t rest = K - static_cast<std::int64_t>(t) * z;
    auto exact = [](BigInt v) { return Subpacketization{v, v}; };
    switch (scheme) {
        case Scheme::spe: {
            BigInt v = BigInt(K) * (K - 2 * z + 2);
            require(K - 2 * z + 2 > 0 && v % 4 == 0, "spe", "K(K-2z+2)/4 must be a positive integer");
            return exact(v / 4);
        }
        case Scheme::rk:
        case Scheme::sicps: {
            check_t_range(scheme, K, z, t, 1);
            BigInt v = BigInt(K) * binomial(rest + t - 1, t - 1);
            require(v % t == 0, std::string(scheme_name(scheme)),
                    "subpacketization is not an integer at t'=" + std::to_string(t));
            return exact(v / t);
        }
        case Scheme::nt:
            check_t_range(scheme, K, z, t, 1);
            return exact(BigInt(K) * binomial(rest + t, t));
        case Scheme::sr1:
            sr1_rate(K, z, t);  // applicability
            return {BigInt(K), BigInt(K) * K};
        case Scheme::sr2:
            rival_rate(scheme, K, z, t);
            return exact(BigInt(K));
        case Scheme::mr:
            return exact(BigInt(K));
        case Scheme::ours:
            break;
    }
    throw ArgumentError("our subpacketization is b^m; use the corner points");
}

std::vector<RatePoint> rival_points(Scheme scheme, int K, int z) {
    check_kz(K, z);
    if (scheme == Scheme::ours || scheme == Scheme::spe || scheme == Scheme::sicps) {
        return {};
    }
    std::vector<RatePoint> points;
    points.push_back({frac(0, 1), make_rational(K), scheme, 0, 0, 0});
    if (scheme == Scheme::mr) {
        points.push_back({frac(1, K), rival_rate(scheme, K, z, 1), scheme, 0, 0, 1});
    } else {
        for (int t = 1; static_cast<std::int64_t>(t) * z <= K; ++t) {
            try {
                points.push_back({frac(t, K), rival_rate(scheme, K, z, t), scheme, 0, 0, t});
            } catch (const ApplicabilityError&) {
            }
        }
    }
    points.push_back({zero_rate_memory(K, z), frac(0, 1), scheme, 0, 0, 0});
    return merge_by_memory(std::move(points));
}

std::optional<Rational> rival_rate_at(Scheme scheme, int K, int z, const Rational& memory) {
    if (memory < 0 || memory > 1) {
        throw ArgumentError("memory fraction must lie in [0, 1]");
    }
    return interpolate(rival_points(scheme, K, z), memory);
}

std::vector<LemmaOutcome> lemma_predicates(const LemmaQuery& q) {
    check_kz(q.K, q.z);
    if (q.m < 1 || q.b < 1 || static_cast<std::int64_t>(q.m) * q.b != q.K || q.b < q.z ||
        q.t < 1) {
        throw ArgumentError("lemma query needs m*b = K, b >= z and t >= 1");
    }
    const int K = q.K, z = q.z, m = q.m, b = q.b, t = q.t;
    const Rational memory = frac(t, b);
    const Rational ours = achievable_rate(b, m, z, t);
    std::vector<LemmaOutcome> out;

    {
        LemmaOutcome o{"rk"};
        o.ours = ours;
        o.applicable = static_cast<std::int64_t>(m) * t * z <= K;
        if (o.applicable) {
            o.theirs = rival_rate(Scheme::rk, K, z, m * t);
            Rational bound = std::min({frac(b / z, b), frac(K / z, K), frac(K - b, K * z)});
            o.satisfied = memory < bound;
            o.confirmed = ours < o.theirs;
            o.detail = "threshold " + to_decimal(bound, 6);
        } else {
            o.detail = "mt*z exceeds K";
        }
        out.push_back(std::move(o));
    }

    {
        LemmaOutcome o{"subpacketization"};
        o.applicable = t == 1 && b > z && m <= K / z;
        o.ours = Rational(big_pow(b, m));
        if (o.applicable) {
            BigInt rk = rival_subpacketization(Scheme::rk, K, z, m).low;
            BigInt nt = rival_subpacketization(Scheme::nt, K, z, m).low;
            o.theirs = Rational(std::min(rk, nt));
            o.satisfied = static_cast<std::int64_t>(b - 1) * (b - 1) >=
                          static_cast<std::int64_t>(K) * (z - 1);
            o.confirmed = o.ours <= Rational(rk) && o.ours <= Rational(nt);
            o.detail = "rk/sicps " + rk.str() + ", nt " + nt.str();
        } else {
            o.detail = "needs t = 1, b > z and m <= floor(K/z)";
        }
        out.push_back(std::move(o));
    }

    {
        LemmaOutcome o{"sr1"};
        if (!q.t2) {
            o.detail = "needs t''";
        } else {
            const int t2 = *q.t2;
            const std::int64_t L = K - static_cast<std::int64_t>(t2) * z;
            bool side = t2 >= 1 && L >= 0 && std::gcd(t2, K) == 1 &&
                        !((K - 1) % z == 0 && t2 == (K - 1) / z);
            // Best memory-sharing pair of our t = 1 corners around M/N = t''/K.
            std::optional<Rational> best;
            int best_m1 = 0, best_m2 = 0;
            auto usable = [&](int m1, int m2) {
                return m1 >= 1 && m1 < m2 && m1 <= t2 && t2 <= m2 && m2 <= K && K % m1 == 0 &&
                       K % m2 == 0 && K / m1 >= z && K / m2 >= z;
            };
            for (int m1 = 1; side && m1 <= t2; ++m1) {
                for (int m2 = std::max(m1 + 1, t2); m2 <= K; ++m2) {
                    if (!usable(m1, m2) ||
                        (q.sr1_pair && *q.sr1_pair != std::pair{m1, m2})) {
                        continue;
                    }
                    Rational lambda = frac(t2 - m1, m2 - m1);
                    Rational y = K / m1 + lambda * (K / m2 - K / m1);
                    if (!best || y < *best) {
                        best = y;
                        best_m1 = m1;
                        best_m2 = m2;
                    }
                }
            }
            o.applicable = side && best.has_value();
            if (o.applicable) {
                Rational bound = frac(L * (L + 2), 2 * (static_cast<std::int64_t>(K) + 2)) + z;
                o.ours = *best - z;
                o.theirs = sr1_rate(K, z, t2);
                o.satisfied = *best <= bound;
                o.confirmed = o.ours <= o.theirs;
                o.detail = "m1=" + std::to_string(best_m1) + " m2=" + std::to_string(best_m2) +
                           " bound " + to_decimal(bound, 6);
            } else {
                o.detail = "needs gcd(t'',K)=1, t'' != (K-1)/z and divisors m1 <= t'' < m2";
            }
        }
        out.push_back(std::move(o));
    }

    {
        LemmaOutcome o{"sr2"};
        o.ours = ours;
        const int t2 = m * t;
        bool side = b % t == 0 && (b - t * z + t) > 0 && b % (b - t * z + t) == 0 && t <= b / z;
        if (side) {
            try {
                o.theirs = rival_rate(Scheme::sr2, K, z, t2);
            } catch (const ApplicabilityError&) {
                side = false;
            }
        }
        o.applicable = side;
        if (side) {
            o.satisfied = m >= 2 && (z == 1 || memory <= frac(m - 2, static_cast<std::int64_t>(m) * (z - 1)));
            o.confirmed = ours <= o.theirs;
            o.detail = "t''=" + std::to_string(t2);
        } else {
            o.detail = "needs t | b, (b - tz + t) | b and t <= floor(b/z)";
        }
        out.push_back(std::move(o));
    }

    {
        LemmaOutcome o{"mr"};
        o.ours = ours;
        RatePoint mr{frac(1, K), rival_rate(Scheme::mr, K, z, 1)};
        RatePoint end{zero_rate_memory(K, z), frac(0, 1)};
        o.theirs = memory >= end.memory ? frac(0, 1) : lerp(mr, end, memory);
        o.applicable = t == 1 && m >= 3;
        o.satisfied = o.applicable;
        o.confirmed = o.applicable && ours <= o.theirs;
        o.detail = o.applicable ? "memory sharing with the zero-rate point"
                                : "needs t = 1 and m >= 3";
        out.push_back(std::move(o));
    }
    return out;
}

std::vector<Rational> default_grid(int K, int z) {
    std::vector<Rational> grid;
    for (int i = 0; i <= 100; ++i) {
        grid.push_back(frac(i, 100));
    }
    for (const RatePoint& p : our_corner_points(K, z)) {
        grid.push_back(p.memory);
    }
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    return grid;
}

std::vector<ComparisonRow> comparison_table(int K, int z, const std::vector<Rational>& grid) {
    check_kz(K, z);
    Curve ours = our_envelope(K, z);
    std::vector<RatePoint> corners = our_corner_points(K, z);
    std::vector<ComparisonRow> rows;
    for (const Rational& memory : grid) {
        if (memory < 0 || memory > 1) {
            throw ArgumentError("grid value " + to_decimal(memory, 6) + " outside [0, 1]");
        }
        // Rival t-parameter when memory = t/K exactly.
        std::optional<int> t_param;
        Rational scaled = memory * K;
        if (boost::multiprecision::denominator(scaled) == 1) {
            t_param = static_cast<int>(boost::multiprecision::numerator(scaled));
        }
        for (Scheme scheme : kSchemes) {
            ComparisonRow row{memory, scheme};
            if (scheme == Scheme::ours) {
                row.rate = ours.evaluate(memory);
                for (const RatePoint& c : corners) {
                    if (c.memory == memory) {
                        BigInt f = big_pow(c.b, c.m);
                        row.subpacketization = Subpacketization{f, f};
                    }
                }
            } else {
                row.external = scheme == Scheme::spe || scheme == Scheme::sicps;
                row.rate = rival_rate_at(scheme, K, z, memory);
                bool corner = false;
                if (scheme == Scheme::spe) {
                    corner = memory == frac(2, K);
                } else if (scheme == Scheme::mr) {
                    corner = memory == frac(1, K);
                } else {
                    corner = t_param && *t_param >= 1;
                }
                if (corner) {
                    try {
                        row.subpacketization =
                            rival_subpacketization(scheme, K, z, t_param.value_or(1));
                    } catch (const ApplicabilityError&) {
                    }
                }
            }
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

std::string comparison_csv(const std::vector<ComparisonRow>& rows) {
    std::string out = "mn_num,mn_den,scheme,rate,log10_subpacketization\n";
    char buf[64];
    for (const ComparisonRow& row : rows) {
        out += boost::multiprecision::numerator(row.memory).str() + ',' +
               boost::multiprecision::denominator(row.memory).str() + ',' +
               std::string(scheme_name(row.scheme)) + ',';
        if (row.external) {
            out += "external";
        } else if (row.rate) {
            out += to_decimal(*row.rate, 6);
        }
        out += ',';
        if (row.subpacketization && row.subpacketization->exact()) {
            std::snprintf(buf, sizeof buf, "%.6f", log10_big(row.subpacketization->low));
            out += buf;
        }
        out += '\n';
    }
    return out;
}

}  // namespace macc
