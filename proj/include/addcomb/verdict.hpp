#pragma once

#include <nlohmann/json.hpp>

#include <string>
#include <string_view>
#include <utility>

namespace addcomb {

enum class Outcome { pass, fail, skipped };

constexpr std::string_view to_string(Outcome o) noexcept
{
    switch (o) {
    case Outcome::pass: return "pass";
    case Outcome::fail: return "fail";
    case Outcome::skipped: return "skipped";
    }
    return "unknown";
}

/**
 * Result of checking one statement on one instance. A skipped verdict means
 * the instance violates a hypothesis; `observed` then names which one.
 */
struct Verdict {
    Outcome outcome = Outcome::skipped;
    std::string observed;
    std::string expected;
    nlohmann::json witness;

    static Verdict passed(nlohmann::json witness = nullptr)
    {
        return {Outcome::pass, {}, {}, std::move(witness)};
    }

    static Verdict failed(std::string observed, std::string expected, nlohmann::json witness = nullptr)
    {
        return {Outcome::fail, std::move(observed), std::move(expected), std::move(witness)};
    }

    static Verdict skipped(std::string hypothesis)
    {
        return {Outcome::skipped, std::move(hypothesis), {}, nullptr};
    }

    [[nodiscard]] bool is_pass() const noexcept { return outcome == Outcome::pass; }
    [[nodiscard]] bool is_fail() const noexcept { return outcome == Outcome::fail; }
    [[nodiscard]] bool is_skipped() const noexcept { return outcome == Outcome::skipped; }

    [[nodiscard]] nlohmann::json to_json() const
    {
        nlohmann::json j;
        j["outcome"] = std::string(to_string(outcome));
        if (!observed.empty())
            j[outcome == Outcome::skipped ? "hypothesis" : "observed"] = observed;
        if (!expected.empty())
            j["expected"] = expected;
        if (!witness.is_null())
            j["witness"] = witness;
        return j;
    }
};

/// Verdict from a single boolean with a message on failure.
inline Verdict verdict_from(bool ok, std::string observed, std::string expected, nlohmann::json witness = nullptr)
{
    return ok ? Verdict::passed(std::move(witness)) : Verdict::failed(std::move(observed), std::move(expected), std::move(witness));
}

} // namespace addcomb
