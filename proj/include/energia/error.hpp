#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace energia {

enum class Errc {
    empty_set,
    zero_arity,
    division_by_zero_element,
    bad_params,
    overflow,
    too_large,
    bad_arity,
    zero_element,
    not_disjoint,
    empty_result,
    empty_graph,
    stage_collapse,
    wrong_branch,
    extractor_failed,
    bad_adversary,
    parameter_too_large,
    too_small,
    precision_exhausted,
    parse_error,
};

constexpr std::string_view errc_name(Errc code) noexcept
{
    switch (code) {
    case Errc::empty_set: return "EmptySet";
    case Errc::zero_arity: return "ZeroArity";
    case Errc::division_by_zero_element: return "DivisionByZeroElement";
    case Errc::bad_params: return "BadParams";
    case Errc::overflow: return "Overflow";
    case Errc::too_large: return "TooLarge";
    case Errc::bad_arity: return "BadArity";
    case Errc::zero_element: return "ZeroElement";
    case Errc::not_disjoint: return "NotDisjoint";
    case Errc::empty_result: return "EmptyResult";
    case Errc::empty_graph: return "EmptyGraph";
    case Errc::stage_collapse: return "StageCollapse";
    case Errc::wrong_branch: return "WrongBranch";
    case Errc::extractor_failed: return "ExtractorFailed";
    case Errc::bad_adversary: return "BadAdversary";
    case Errc::parameter_too_large: return "ParameterTooLarge";
    case Errc::too_small: return "TooSmall";
    case Errc::precision_exhausted: return "PrecisionExhausted";
    case Errc::parse_error: return "ParseError";
    }
    return "Unknown";
}

/// Guard violations are the errors a caller can fix by shrinking the input.
constexpr bool is_guard_violation(Errc code) noexcept
{
    return code == Errc::overflow || code == Errc::too_large || code == Errc::parameter_too_large;
}

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& detail)
        : std::runtime_error(std::string(errc_name(code)) + ": " + detail), code_(code), detail_(detail)
    {
    }

    Errc code() const noexcept { return code_; }
    const std::string& detail() const noexcept { return detail_; }

private:
    Errc code_;
    std::string detail_;
};

[[noreturn]] inline void fail(Errc code, const std::string& detail) { throw Error(code, detail); }

} // namespace energia
