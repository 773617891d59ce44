#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace ubet {

/// Gap between the boundary and surplus swap branches where they meet
/// (TB = R − Δ), and between the boundary and deficit branches (TB = R).
struct ContinuityRow {
    long double rho = 0;
    long double max_gap_surplus = 0;  // |branch 1 − branch 2| at the lower edge
    long double max_gap_deficit = 0;  // |branch 1 − branch 3| at the upper edge
    long double max_rel_gap_surplus = 0;
};

std::vector<ContinuityRow> continuity_grid(const std::vector<long double>& rhos);

struct FieldDiff {
    long double relative = 0;  // max |a − b| / max(|a|, |b|) over numeric fields
    /// Same, but a field differing by at most one unit in its last printed
    /// decimal place counts as equal: fixed-point values cannot agree more
    /// finely than their resolution.
    long double beyond_ulp = 0;
};

/// Non-numeric fields must match exactly (a mismatch counts as 1).
/// `share_resolution`, when positive, replaces the printed resolution of LP
/// share fields: shares are minted from collateral amounts, so they cannot
/// be finer than one collateral unit at the pool's share price.
FieldDiff diff_fields(const std::map<std::string, std::string>& a, const std::map<std::string, std::string>& b,
                      long double share_resolution = 0);

struct PropertyReport {
    std::size_t states = 0;
    FieldDiff add_additivity;     // add(a); add(b)  vs  add(a + b)
    FieldDiff remove_additivity;  // remove(s); remove(t)  vs  remove(s + t)
    FieldDiff add_remove;         // remove(add(d)) vs the original state
    FieldDiff remove_add;         // add(remove(s)) vs the original state

    /// Worst error beyond fixed-point resolution; this is what tolerances apply to.
    long double worst() const;
    long double worst_raw() const;
};

/// Additivity over general states (liquidity plus executed bets) and
/// reversibility over collateral-only states, `states` random draws each.
PropertyReport run_property_suite(std::uint64_t seed, std::size_t states);

}  // namespace ubet
