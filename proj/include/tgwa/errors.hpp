#pragma once

#include <stdexcept>
#include <string>

namespace tgwa {

enum class errc {
    division_by_zero,
    q_equals_one,
    zero_input,
    denominator_vanishes,
    mixed_cyclotomic_orders,
    not_skew_symmetric,
    degenerate_basis,
    not_scalar_graded,
    groupness_violated,
    not_root_of_unity,
    infinite_order,
    no_finite_dimensional_weight_spaces,
    window_required,
    certification_failed,
    infinite_dimension,
    config_parse,
    parse_error,
    internal,
};

inline const char* errc_name(errc c) {
    switch (c) {
    case errc::division_by_zero: return "DivisionByZero";
    case errc::q_equals_one: return "QEqualsOne";
    case errc::zero_input: return "ZeroInput";
    case errc::denominator_vanishes: return "DenominatorVanishes";
    case errc::mixed_cyclotomic_orders: return "MixedCyclotomicOrders";
    case errc::not_skew_symmetric: return "NotSkewSymmetric";
    case errc::degenerate_basis: return "DegenerateBasis";
    case errc::not_scalar_graded: return "NotScalarGraded";
    case errc::groupness_violated: return "GroupnessViolated";
    case errc::not_root_of_unity: return "NotRootOfUnity";
    case errc::infinite_order: return "InfiniteOrder";
    case errc::no_finite_dimensional_weight_spaces: return "NoFiniteDimensionalWeightSpaces";
    case errc::window_required: return "WindowRequired";
    case errc::certification_failed: return "CertificationFailed";
    case errc::infinite_dimension: return "InfiniteDimension";
    case errc::config_parse: return "ConfigParse";
    case errc::parse_error: return "ParseError";
    case errc::internal: return "InternalError";
    }
    return "UnknownError";
}

class error : public std::runtime_error {
public:
    error(errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    errc code() const noexcept { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw error(code, what); }

} // namespace tgwa
