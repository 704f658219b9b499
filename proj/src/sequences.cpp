#include "spacing/sequences.hpp"

#include "spacing/error.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace spacing {

namespace {

using u128 = unsigned __int128;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    b %= m;
    while (e) {
        if (e & 1) r = mul_mod(r, b, m);
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    return r;
}

std::vector<std::uint32_t> small_primes(std::uint32_t limit) {
    std::vector<bool> composite(limit + 1, false);
    std::vector<std::uint32_t> out;
    for (std::uint32_t i = 2; i <= limit; ++i) {
        if (composite[i]) continue;
        out.push_back(i);
        for (std::uint64_t j = std::uint64_t{i} * i; j <= limit; j += i) composite[j] = true;
    }
    return out;
}

}  // namespace

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    std::uint64_t d = n - 1;
    int r = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++r;
    }
    for (std::uint64_t a : {2ULL, 325ULL, 9375ULL, 28178ULL, 450775ULL, 9780504ULL, 1795265022ULL}) {
        a %= n;
        if (a == 0) continue;
        std::uint64_t x = pow_mod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < r; ++i) {
            x = mul_mod(x, x, n);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

PrimeWindow primes_from(std::uint64_t start, std::size_t count, std::size_t segment) {
    if (start < 2) throw ArgumentError("primes_from: start must be at least 2");
    if (segment < 64) throw ArgumentError("primes_from: segment too small");
    // Prime gaps below 2^63 are far shorter than 1500 log^2 start; use that
    // as the overflow guard.
    const double ln = std::log(static_cast<double>(start));
    const double reach = static_cast<double>(start) + (static_cast<double>(count) + 1.0) * 1500.0 * ln;
    if (reach >= 9.2e18) throw ArgumentError("primes_from: range would approach 2^63");

    PrimeWindow w;
    w.start = start;
    w.primes.reserve(count);
    if (count == 0) return w;
    if (start <= 2) w.primes.push_back(2);

    std::vector<std::uint32_t> base;
    std::uint64_t base_limit = 0;
    std::uint64_t lo = std::max<std::uint64_t>(start, 3) | 1;  // first odd candidate
    std::vector<char> mark(segment);
    while (w.primes.size() < count) {
        // Segment covers odd numbers lo, lo+2, ..., lo + 2(segment-1).
        const std::uint64_t hi = lo + 2 * (segment - 1);
        const auto root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(hi))) + 2;
        if (root > base_limit) {
            base_limit = std::max<std::uint64_t>(root, 2 * base_limit);
            base = small_primes(static_cast<std::uint32_t>(base_limit));
        }
        std::fill(mark.begin(), mark.end(), 1);
        for (std::uint32_t p : base) {
            if (p == 2) continue;
            const std::uint64_t pp = std::uint64_t{p} * p;
            if (pp > hi) break;
            std::uint64_t first = std::max(pp, (lo + p - 1) / p * p);
            if ((first & 1) == 0) first += p;
            for (std::uint64_t m = first; m <= hi; m += 2 * p) mark[(m - lo) / 2] = 0;
        }
        for (std::size_t i = 0; i < segment && w.primes.size() < count; ++i) {
            if (!mark[i]) continue;
            const std::uint64_t cand = lo + 2 * i;
            if (!is_prime(cand))
                throw ConsistencyError("primes_from: sieve and Miller-Rabin disagree at " + std::to_string(cand));
            w.primes.push_back(cand);
        }
        lo = hi + 2;
    }
    w.count = w.primes.size();
    return w;
}

std::vector<std::uint64_t> prime_gaps(const PrimeWindow& window, int order) {
    if (order < 0) throw ArgumentError("prime_gaps: order must be non-negative");
    const std::size_t step = static_cast<std::size_t>(order) + 1;
    if (window.primes.size() < step + 1)
        throw ArgumentError("prime_gaps: window needs at least " + std::to_string(step + 1) + " primes");
    std::vector<std::uint64_t> gaps;
    for (std::size_t i = 0; i + step < window.primes.size(); ++i)
        gaps.push_back(window.primes[i + step] - window.primes[i]);
    return gaps;
}

Histogram prime_spacing_histogram(const PrimeWindow& window, int order, double s_max) {
    if (order < 0 || order > 1) throw ArgumentError("prime_spacing_histogram: order must be 0 or 1");
    const double ln = std::log(static_cast<double>(window.start));
    const auto bins = static_cast<std::size_t>(std::ceil(s_max * ln / 2.0));
    if (bins < 1) throw ArgumentError("prime_spacing_histogram: s_max too small");
    std::vector<double> edges(bins + 1);
    for (std::size_t k = 0; k <= bins; ++k) edges[k] = 2.0 * static_cast<double>(k) / ln;
    std::vector<std::uint64_t> counts(bins, 0);
    std::uint64_t above = 0;
    for (std::uint64_t t : prime_gaps(window, order)) {
        // Right-closed in t: t in (2(k-1), 2k] goes to bin k-1 (0-based).
        const std::uint64_t k = (t + 1) / 2;
        if (k >= 1 && k <= bins)
            ++counts[k - 1];
        else
            ++above;
    }
    return histogram_from_counts(std::move(edges), std::move(counts), 0, above);
}

ZeroDataset parse_zeros(const std::string& text, const std::string& source) {
    ZeroDataset d;
    d.source_path = source;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        const auto last = line.find_last_not_of(" \t\r");
        const std::string token = line.substr(first, last - first + 1);
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(token, &used);
        } catch (const std::exception&) {
            throw FormatError(source + ":" + std::to_string(line_no) + ": not a number: '" + token + "'");
        }
        if (used != token.size())
            throw FormatError(source + ":" + std::to_string(line_no) + ": trailing characters in '" + token + "'");
        if (!(v > 0.0) || !std::isfinite(v))
            throw FormatError(source + ":" + std::to_string(line_no) + ": ordinate must be positive");
        if (!d.ordinates.empty() && !(v > d.ordinates.back()))
            throw FormatError(source + ":" + std::to_string(line_no) + ": ordinates not strictly ascending");
        d.ordinates.push_back(v);
    }
    if (d.ordinates.empty()) throw FormatError(source + ": no ordinates");
    return d;
}

ZeroDataset load_zeros(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw FormatError("cannot open zeros file: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_zeros(ss.str(), path);
}

std::vector<double> nn_statistic(const std::vector<double>& points) {
    if (points.size() < 3) throw ArgumentError("nn_statistic: need at least 3 points");
    std::vector<double> out;
    out.reserve(points.size() - 2);
    for (std::size_t i = 1; i + 1 < points.size(); ++i) {
        const double left = points[i] - points[i - 1];
        const double right = points[i + 1] - points[i];
        if (!(left > 0.0) || !(right > 0.0)) throw ArgumentError("nn_statistic: points must be strictly ascending");
        out.push_back(std::min(left, right));
    }
    return out;
}

double zero_counting(double gamma) {
    const double x = gamma / (2.0 * std::numbers::pi);
    return x * (std::log(x) - 1.0) + 0.875;
}

std::vector<double> unfold_zeros(const ZeroDataset& data) {
    std::vector<double> out;
    out.reserve(data.ordinates.size());
    for (double g : data.ordinates) {
        if (!(g > 14.0)) throw ArgumentError("unfold_zeros: ordinates must exceed 14");
        out.push_back(zero_counting(g));
    }
    return out;
}

}  // namespace spacing
