#pragma once

#include <addcomb/error.hpp>

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <memory>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace addcomb {

/// Default ceiling on |G| accepted by make_group.
inline constexpr int default_max_order = 4096;

/// Canonical index of a group element in [0, |G|).
using Index = int;

/// Coordinates of an element of Z_{n_1} x ... x Z_{n_r}.
struct GroupElement {
    std::vector<int> coords;

    friend bool operator==(const GroupElement&, const GroupElement&) = default;
};

/**
 * A finite abelian group given as a product of cyclic factors.
 *
 * Elements are indexed by the mixed-radix rule with the last coordinate
 * varying fastest, so Z2xZ4 orders its elements (0,0),(0,1),...,(1,3).
 * Every bitmap, report and literal in the library uses this indexing.
 * An empty factor list is the trivial group; it only arises as a quotient.
 */
class AbelianGroup {
public:
    explicit AbelianGroup(std::vector<int> orders, int max_order = default_max_order)
        : orders_(std::move(orders))
    {
        long long product = 1;
        for (int q : orders_) {
            require(q >= 2, ErrorCode::domain, "cyclic factor orders must be >= 2");
            product *= q;
            require(product <= max_order, ErrorCode::size,
                    "group order exceeds the configured maximum " + std::to_string(max_order));
        }
        order_ = static_cast<int>(product);
        strides_.assign(orders_.size(), 1);
        for (int i = static_cast<int>(orders_.size()) - 2; i >= 0; --i)
            strides_[i] = strides_[i + 1] * orders_[i + 1];

        neg_.resize(order_);
        for (Index a = 0; a < order_; ++a)
            neg_[a] = compute_neg(a);
        if (order_ <= table_limit) {
            add_table_.resize(static_cast<std::size_t>(order_) * order_);
            for (Index a = 0; a < order_; ++a)
                for (Index b = 0; b < order_; ++b)
                    add_table_[static_cast<std::size_t>(a) * order_ + b] =
                        static_cast<std::uint16_t>(compute_add(a, b));
        }
        fingerprint_ = 1469598103934665603ULL;
        for (int q : orders_) {
            fingerprint_ ^= static_cast<std::uint64_t>(q);
            fingerprint_ *= 1099511628211ULL;
        }
    }

    [[nodiscard]] int order() const noexcept { return order_; }
    [[nodiscard]] int rank() const noexcept { return static_cast<int>(orders_.size()); }
    [[nodiscard]] std::span<const int> orders() const noexcept { return orders_; }
    [[nodiscard]] bool is_trivial() const noexcept { return order_ == 1; }

    /// Stable identity of the factor list; equal for equal groups.
    [[nodiscard]] std::uint64_t fingerprint() const noexcept { return fingerprint_; }

    [[nodiscard]] Index zero() const noexcept { return 0; }

    [[nodiscard]] Index add(Index a, Index b) const noexcept
    {
        if (!add_table_.empty())
            return add_table_[static_cast<std::size_t>(a) * order_ + b];
        return compute_add(a, b);
    }

    [[nodiscard]] Index neg(Index a) const noexcept { return neg_[a]; }
    [[nodiscard]] Index sub(Index a, Index b) const noexcept { return add(a, neg_[b]); }

    [[nodiscard]] Index multiple(Index a, long long k) const
    {
        Index result = 0;
        Index base = k < 0 ? neg(a) : a;
        unsigned long long n = static_cast<unsigned long long>(k < 0 ? -k : k);
        while (n != 0) {
            if (n & 1U)
                result = add(result, base);
            base = add(base, base);
            n >>= 1U;
        }
        return result;
    }

    [[nodiscard]] int element_order(Index a) const
    {
        int m = 1;
        for (std::size_t i = 0; i < orders_.size(); ++i) {
            const int c = digit(a, i);
            const int q = orders_[i];
            const int ord = q / std::gcd(c, q);
            m = std::lcm(m, ord);
        }
        return m;
    }

    [[nodiscard]] GroupElement decode(Index a) const
    {
        check_index(a);
        GroupElement e;
        e.coords.resize(orders_.size());
        for (std::size_t i = 0; i < orders_.size(); ++i)
            e.coords[i] = digit(a, i);
        return e;
    }

    [[nodiscard]] Index encode(const GroupElement& e) const
    {
        require(e.coords.size() == orders_.size(), ErrorCode::domain,
                "element has " + std::to_string(e.coords.size()) + " coordinates, group has "
                    + std::to_string(orders_.size()) + " factors");
        Index idx = 0;
        for (std::size_t i = 0; i < orders_.size(); ++i) {
            require(e.coords[i] >= 0 && e.coords[i] < orders_[i], ErrorCode::domain,
                    "coordinate out of range");
            idx += e.coords[i] * strides_[i];
        }
        return idx;
    }

    [[nodiscard]] GroupElement add(const GroupElement& a, const GroupElement& b) const
    {
        return decode(add(encode(a), encode(b)));
    }

    [[nodiscard]] GroupElement neg(const GroupElement& a) const { return decode(neg(encode(a))); }

    void check_index(Index a) const
    {
        require(a >= 0 && a < order_, ErrorCode::domain,
                "element index " + std::to_string(a) + " outside [0," + std::to_string(order_) + ")");
    }

    /// Literal form: "Z8", "Z2xZ4"; "Z1" for the trivial group.
    [[nodiscard]] std::string name() const
    {
        if (orders_.empty())
            return "Z1";
        std::string out;
        for (std::size_t i = 0; i < orders_.size(); ++i) {
            if (i != 0)
                out += 'x';
            out += 'Z' + std::to_string(orders_[i]);
        }
        return out;
    }

    /// Element literal: bare integer for cyclic groups, "(a,b,...)" otherwise.
    [[nodiscard]] std::string element_literal(Index a) const
    {
        if (orders_.size() <= 1)
            return std::to_string(a);
        std::string out = "(";
        for (std::size_t i = 0; i < orders_.size(); ++i) {
            if (i != 0)
                out += ',';
            out += std::to_string(digit(a, i));
        }
        return out + ")";
    }

    friend bool operator==(const AbelianGroup& a, const AbelianGroup& b) noexcept
    {
        return a.orders_ == b.orders_;
    }

private:
    static constexpr int table_limit = 256;

    [[nodiscard]] int digit(Index a, std::size_t i) const noexcept { return (a / strides_[i]) % orders_[i]; }

    [[nodiscard]] Index compute_add(Index a, Index b) const noexcept
    {
        Index r = 0;
        for (std::size_t i = 0; i < orders_.size(); ++i) {
            int c = digit(a, i) + digit(b, i);
            if (c >= orders_[i])
                c -= orders_[i];
            r += c * strides_[i];
        }
        return r;
    }

    [[nodiscard]] Index compute_neg(Index a) const noexcept
    {
        Index r = 0;
        for (std::size_t i = 0; i < orders_.size(); ++i) {
            const int c = digit(a, i);
            r += (c == 0 ? 0 : orders_[i] - c) * strides_[i];
        }
        return r;
    }

    std::vector<int> orders_;
    std::vector<int> strides_;
    std::vector<Index> neg_;
    std::vector<std::uint16_t> add_table_;
    int order_ = 1;
    std::uint64_t fingerprint_ = 0;
};

using GroupPtr = std::shared_ptr<const AbelianGroup>;

inline GroupPtr make_group(std::vector<int> orders, int max_order = default_max_order)
{
    require(!orders.empty(), ErrorCode::domain, "a group needs at least one cyclic factor");
    return std::make_shared<const AbelianGroup>(std::move(orders), max_order);
}

/// Internal: the trivial group, used as the quotient G/G.
inline GroupPtr make_trivial_group() { return std::make_shared<const AbelianGroup>(std::vector<int>{}); }

namespace detail {

inline std::string_view trim(std::string_view s)
{
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t'))
        s.remove_suffix(1);
    return s;
}

inline int parse_int(std::string_view s, std::string_view context)
{
    s = trim(s);
    int value = 0;
    const auto* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, value);
    if (s.empty() || ec != std::errc() || ptr != end)
        fail(ErrorCode::parse, "bad integer '" + std::string(s) + "' in " + std::string(context));
    return value;
}

} // namespace detail

/// Parses "Z8" or "Z2xZ4".
inline GroupPtr parse_group(std::string_view literal, int max_order = default_max_order)
{
    const std::string_view text = detail::trim(literal);
    if (text.empty())
        fail(ErrorCode::parse, "empty group literal");
    std::vector<int> orders;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t next = std::min(text.find('x', pos), text.size());
        std::string_view factor = detail::trim(text.substr(pos, next - pos));
        if (factor.size() < 2 || (factor[0] != 'Z' && factor[0] != 'z'))
            fail(ErrorCode::parse, "bad group literal '" + std::string(text) + "'");
        const int q = detail::parse_int(factor.substr(1), "group literal");
        if (q < 2)
            fail(ErrorCode::parse, "cyclic factor order must be >= 2 in '" + std::string(text) + "'");
        orders.push_back(q);
        pos = next + 1;
    }
    return make_group(std::move(orders), max_order);
}

/// Parses "(a,b,...)" or a bare integer (one-factor groups only).
inline Index parse_element(const AbelianGroup& g, std::string_view literal)
{
    const std::string_view text = detail::trim(literal);
    if (text.empty())
        fail(ErrorCode::parse, "empty element literal");
    if (text.front() == '(') {
        if (text.back() != ')')
            fail(ErrorCode::parse, "unterminated element literal '" + std::string(text) + "'");
        GroupElement e;
        std::string_view body = text.substr(1, text.size() - 2);
        std::size_t pos = 0;
        while (pos <= body.size()) {
            const std::size_t next = std::min(body.find(',', pos), body.size());
            e.coords.push_back(detail::parse_int(body.substr(pos, next - pos), "element literal"));
            pos = next + 1;
        }
        try {
            return g.encode(e);
        } catch (const Error& err) {
            fail(ErrorCode::parse, err.what());
        }
    }
    const int idx = detail::parse_int(text, "element literal");
    if (idx < 0 || idx >= g.order())
        fail(ErrorCode::parse, "element index " + std::to_string(idx) + " out of range for " + g.name());
    return idx;
}

namespace detail {

inline void partitions(int n, int max_part, std::vector<int>& current, std::vector<std::vector<int>>& out)
{
    if (n == 0) {
        out.push_back(current);
        return;
    }
    for (int part = std::min(n, max_part); part >= 1; --part) {
        current.push_back(part);
        partitions(n - part, part, current, out);
        current.pop_back();
    }
}

inline std::vector<std::pair<int, int>> factorize(int n)
{
    std::vector<std::pair<int, int>> out;
    for (int p = 2; p * p <= n; ++p) {
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e > 0)
            out.emplace_back(p, e);
    }
    if (n > 1)
        out.emplace_back(n, 1);
    return out;
}

} // namespace detail

/// Invariant factors (ascending, each dividing the next) of the abelian group
/// with the given prime-power decomposition {p -> partition of the exponent}.
inline std::vector<int> invariant_factors(const std::vector<std::pair<int, std::vector<int>>>& primary)
{
    std::size_t rank = 0;
    for (const auto& [p, parts] : primary)
        rank = std::max(rank, parts.size());
    std::vector<int> factors(rank, 1);
    for (const auto& [p, parts] : primary) {
        // parts are descending; the largest goes to the last invariant factor
        for (std::size_t i = 0; i < parts.size(); ++i) {
            int pk = 1;
            for (int j = 0; j < parts[i]; ++j)
                pk *= p;
            factors[rank - 1 - i] *= pk;
        }
    }
    return factors;
}

/**
 * One representative per isomorphism class of abelian groups of each order
 * 2..n_max, in invariant-factor form. Groups of one order are listed by
 * number of factors, then lexicographically (Z8, Z2xZ4, Z2xZ2xZ2).
 */
inline std::vector<GroupPtr> abelian_group_catalog(int n_max)
{
    require(n_max >= 2, ErrorCode::domain, "catalog bound must be >= 2");
    require(n_max <= default_max_order, ErrorCode::size, "catalog bound exceeds the maximum group order");
    std::vector<GroupPtr> out;
    for (int n = 2; n <= n_max; ++n) {
        const auto primes = detail::factorize(n);
        std::vector<std::vector<std::vector<int>>> choices;
        for (const auto& [p, e] : primes) {
            std::vector<std::vector<int>> parts;
            std::vector<int> cur;
            detail::partitions(e, e, cur, parts);
            choices.push_back(std::move(parts));
        }
        std::vector<std::vector<int>> classes;
        std::vector<std::size_t> pick(choices.size(), 0);
        while (true) {
            std::vector<std::pair<int, std::vector<int>>> primary;
            for (std::size_t i = 0; i < choices.size(); ++i)
                primary.emplace_back(primes[i].first, choices[i][pick[i]]);
            classes.push_back(invariant_factors(primary));
            std::size_t i = 0;
            while (i < pick.size() && ++pick[i] == choices[i].size())
                pick[i++] = 0;
            if (i == pick.size())
                break;
        }
        std::sort(classes.begin(), classes.end(), [](const auto& a, const auto& b) {
            if (a.size() != b.size())
                return a.size() < b.size();
            return a < b;
        });
        for (auto& c : classes)
            out.push_back(make_group(std::move(c)));
    }
    return out;
}

} // namespace addcomb
