#pragma once

#include <addcomb/group.hpp>

#include <bit>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace addcomb {

/**
 * A subset of a finite abelian group, stored as a membership bitmap over the
 * canonical element indices. Sets are bound to one group; mixing sets of
 * different groups is a domain error.
 *
 * The canonical order on sets compares bitmaps as unsigned integers with
 * element i at bit i.
 */
class GroupSet {
public:
    using Word = std::uint64_t;
    static constexpr int word_bits = 64;

    explicit GroupSet(GroupPtr group)
        : group_(std::move(group)), words_(static_cast<std::size_t>((group_->order() + word_bits - 1) / word_bits), 0)
    {
    }

    GroupSet(GroupPtr group, std::initializer_list<Index> elements)
        : GroupSet(std::move(group))
    {
        for (Index e : elements)
            insert(e);
    }

    static GroupSet from_indices(GroupPtr group, std::span<const Index> elements)
    {
        GroupSet s(std::move(group));
        for (Index e : elements)
            s.insert(e);
        return s;
    }

    static GroupSet full(GroupPtr group)
    {
        GroupSet s(std::move(group));
        for (Index e = 0; e < s.group_->order(); ++e)
            s.insert(e);
        return s;
    }

    /// Small groups only (|G| <= 64): bit i of mask is element i.
    static GroupSet from_mask(GroupPtr group, Word mask)
    {
        require(group->order() <= word_bits, ErrorCode::size, "mask form needs |G| <= 64");
        GroupSet s(std::move(group));
        if (s.group_->order() < word_bits)
            mask &= (Word{1} << s.group_->order()) - 1;
        s.words_[0] = mask;
        return s;
    }

    [[nodiscard]] const GroupPtr& group_ptr() const noexcept { return group_; }
    [[nodiscard]] const AbelianGroup& group() const noexcept { return *group_; }
    [[nodiscard]] int universe() const noexcept { return group_->order(); }

    [[nodiscard]] Word mask() const
    {
        require(group_->order() <= word_bits, ErrorCode::size, "mask form needs |G| <= 64");
        return words_[0];
    }

    [[nodiscard]] bool contains(Index e) const noexcept
    {
        return (words_[static_cast<std::size_t>(e) / word_bits] >> (e % word_bits)) & 1U;
    }

    void insert(Index e)
    {
        group_->check_index(e);
        words_[static_cast<std::size_t>(e) / word_bits] |= Word{1} << (e % word_bits);
    }

    void erase(Index e)
    {
        group_->check_index(e);
        words_[static_cast<std::size_t>(e) / word_bits] &= ~(Word{1} << (e % word_bits));
    }

    [[nodiscard]] int size() const noexcept
    {
        int n = 0;
        for (Word w : words_)
            n += std::popcount(w);
        return n;
    }

    [[nodiscard]] bool empty() const noexcept
    {
        for (Word w : words_)
            if (w != 0)
                return false;
        return true;
    }

    /// Smallest member index, or -1 when empty.
    [[nodiscard]] Index min_element() const noexcept
    {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] != 0)
                return static_cast<Index>(i * word_bits) + std::countr_zero(words_[i]);
        return -1;
    }

    template <typename Fn>
    void for_each(Fn&& fn) const
    {
        for (std::size_t i = 0; i < words_.size(); ++i) {
            Word w = words_[i];
            while (w != 0) {
                fn(static_cast<Index>(i * word_bits) + std::countr_zero(w));
                w &= w - 1;
            }
        }
    }

    [[nodiscard]] std::vector<Index> elements() const
    {
        std::vector<Index> out;
        out.reserve(static_cast<std::size_t>(size()));
        for_each([&](Index e) { out.push_back(e); });
        return out;
    }

    [[nodiscard]] bool same_group(const GroupSet& other) const noexcept
    {
        return group_ == other.group_ || *group_ == *other.group_;
    }

    void check_same_group(const GroupSet& other) const
    {
        require(same_group(other), ErrorCode::domain,
                "sets belong to different groups (" + group_->name() + " vs " + other.group_->name() + ")");
    }

    [[nodiscard]] bool is_subset_of(const GroupSet& other) const
    {
        check_same_group(other);
        for (std::size_t i = 0; i < words_.size(); ++i)
            if ((words_[i] & ~other.words_[i]) != 0)
                return false;
        return true;
    }

    [[nodiscard]] bool intersects(const GroupSet& other) const
    {
        check_same_group(other);
        for (std::size_t i = 0; i < words_.size(); ++i)
            if ((words_[i] & other.words_[i]) != 0)
                return true;
        return false;
    }

    GroupSet& operator|=(const GroupSet& other)
    {
        check_same_group(other);
        for (std::size_t i = 0; i < words_.size(); ++i)
            words_[i] |= other.words_[i];
        return *this;
    }

    GroupSet& operator&=(const GroupSet& other)
    {
        check_same_group(other);
        for (std::size_t i = 0; i < words_.size(); ++i)
            words_[i] &= other.words_[i];
        return *this;
    }

    /// Set difference.
    GroupSet& operator-=(const GroupSet& other)
    {
        check_same_group(other);
        for (std::size_t i = 0; i < words_.size(); ++i)
            words_[i] &= ~other.words_[i];
        return *this;
    }

    friend GroupSet operator|(GroupSet a, const GroupSet& b) { return a |= b; }
    friend GroupSet operator&(GroupSet a, const GroupSet& b) { return a &= b; }
    friend GroupSet operator-(GroupSet a, const GroupSet& b) { return a -= b; }

    [[nodiscard]] GroupSet complement() const
    {
        GroupSet out(group_);
        for (std::size_t i = 0; i < words_.size(); ++i)
            out.words_[i] = ~words_[i];
        out.clear_padding();
        return out;
    }

    /// A + x.
    [[nodiscard]] GroupSet translate(Index x) const
    {
        GroupSet out(group_);
        for_each([&](Index e) { out.set_bit(group_->add(e, x)); });
        return out;
    }

    /// -A.
    [[nodiscard]] GroupSet negate() const
    {
        GroupSet out(group_);
        for_each([&](Index e) { out.set_bit(group_->neg(e)); });
        return out;
    }

    friend bool operator==(const GroupSet& a, const GroupSet& b) noexcept
    {
        return a.same_group(b) && a.words_ == b.words_;
    }

    /// Canonical order: bitmap value, most significant word first.
    friend std::strong_ordering operator<=>(const GroupSet& a, const GroupSet& b)
    {
        a.check_same_group(b);
        for (std::size_t i = a.words_.size(); i-- > 0;)
            if (a.words_[i] != b.words_[i])
                return a.words_[i] <=> b.words_[i];
        return std::strong_ordering::equal;
    }

    /// "{0,1,4,5}": canonical indices, ascending, no spaces.
    [[nodiscard]] std::string to_string() const
    {
        std::string out = "{";
        bool first = true;
        for_each([&](Index e) {
            if (!first)
                out += ',';
            out += std::to_string(e);
            first = false;
        });
        return out + "}";
    }

    [[nodiscard]] std::span<const Word> words() const noexcept { return words_; }

    [[nodiscard]] std::size_t hash() const noexcept
    {
        std::uint64_t h = group_->fingerprint();
        for (Word w : words_) {
            h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        }
        return static_cast<std::size_t>(h);
    }

    /// Unchecked insert for hot loops over indices known to be in range.
    void set_bit(Index e) noexcept { words_[static_cast<std::size_t>(e) / word_bits] |= Word{1} << (e % word_bits); }

private:
    void clear_padding() noexcept
    {
        const int rem = group_->order() % word_bits;
        if (rem != 0)
            words_.back() &= (Word{1} << rem) - 1;
    }

    GroupPtr group_;
    std::vector<Word> words_;
};

struct GroupSetHash {
    std::size_t operator()(const GroupSet& s) const noexcept { return s.hash(); }
};

/**
 * Parses "{0,1,4,5}" (canonical indices) or "{(0,0),(1,1)}" (coordinates).
 * Duplicates are accepted and collapse.
 */
inline GroupSet parse_set(const GroupPtr& group, std::string_view literal)
{
    const std::string_view text = detail::trim(literal);
    if (text.size() < 2 || text.front() != '{' || text.back() != '}')
        fail(ErrorCode::parse, "set literal must be braced: '" + std::string(text) + "'");
    GroupSet out(group);
    std::string_view body = detail::trim(text.substr(1, text.size() - 2));
    std::size_t pos = 0;
    while (pos < body.size()) {
        std::size_t end;
        if (body[pos] == '(') {
            end = body.find(')', pos);
            if (end == std::string_view::npos)
                fail(ErrorCode::parse, "unterminated tuple in '" + std::string(text) + "'");
            ++end;
        } else {
            end = std::min(body.find(',', pos), body.size());
        }
        out.insert(parse_element(*group, body.substr(pos, end - pos)));
        pos = end;
        while (pos < body.size() && (body[pos] == ' ' || body[pos] == '\t'))
            ++pos;
        if (pos < body.size()) {
            if (body[pos] != ',')
                fail(ErrorCode::parse, "expected ',' in '" + std::string(text) + "'");
            ++pos;
            while (pos < body.size() && (body[pos] == ' ' || body[pos] == '\t'))
                ++pos;
            if (pos == body.size())
                fail(ErrorCode::parse, "trailing ',' in '" + std::string(text) + "'");
        }
    }
    return out;
}

} // namespace addcomb
