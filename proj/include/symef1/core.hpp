#pragma once

// Valuation instances, partitions, and the fairness predicates evaluated on them.
//
// Indices are 0-based in memory. Agents and items are 1-based in every text
// format (instance files, partition files, LP export, DOT).

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace symef1 {

using Value = std::int64_t;
using BigInt = boost::multiprecision::cpp_int;
using Bundle = std::vector<int>;

class ParseError : public std::runtime_error {
public:
    ParseError(int line, const std::string & what);
    int line() const noexcept { return line_; }

private:
    int line_;
};

/// Additive valuations of n agents over m indivisible items. Entries are
/// nonnegative integers stored row-major.
class Instance {
public:
    Instance() = default;
    Instance(int agents, int items, std::vector<Value> values);
    Instance(std::initializer_list<std::initializer_list<Value>> rows);

    int agents() const noexcept { return agents_; }
    int items() const noexcept { return items_; }
    Value value(int agent, int item) const { return values_[index(agent, item)]; }
    std::span<const Value> row(int agent) const;
    const std::vector<Value> & values() const noexcept { return values_; }

    friend bool operator==(const Instance &, const Instance &) = default;

private:
    std::size_t index(int agent, int item) const;

    int agents_ = 1;
    int items_ = 0;
    std::vector<Value> values_;
};

/// n bundles of item indices. Bundles are kept sorted; empty bundles are legal.
struct Partition {
    std::vector<Bundle> bundles;

    Partition() = default;
    explicit Partition(std::vector<Bundle> b);
    static Partition empty(int bundle_count);

    int size() const noexcept { return static_cast<int>(bundles.size()); }
    const Bundle & operator[](int k) const { return bundles[static_cast<std::size_t>(k)]; }
    Bundle & operator[](int k) { return bundles[static_cast<std::size_t>(k)]; }

    /// Total number of items over all bundles.
    int item_count() const;

    friend bool operator==(const Partition &, const Partition &) = default;
    friend auto operator<=>(const Partition &, const Partition &) = default;
};

/// Bundle k is handed to agent owner[k].
struct Assignment {
    Partition partition;
    std::vector<int> owner;

    /// Bundle owned by `agent`.
    const Bundle & bundle_of(int agent) const;
};

/// Throws std::invalid_argument unless the bundles are disjoint, cover
/// {0..items-1} exactly, and number `bundle_count`.
void validate_partition(const Partition & p, int bundle_count, int items);

/// Like validate_partition, but only requires disjointness and range; used
/// for partial partitions during greedy construction.
void validate_partial_partition(const Partition & p, int bundle_count, int items);

void validate_assignment(const Assignment & a, int agents, int items);

// ---- serialization --------------------------------------------------------

Instance parse_instance(std::string_view text);
std::string format_instance(const Instance & inst);

/// Reads n bundle lines of 1-based item indices. Lines starting with '#' are
/// skipped; an empty line is an empty bundle. Missing trailing lines are
/// treated as empty bundles.
Partition parse_partition(std::string_view text, int bundle_count, int items);
std::string format_partition(const Partition & p);

Instance load_instance(const std::string & path);
Partition load_partition(const std::string & path, int bundle_count, int items);

// ---- bundle statistics ----------------------------------------------------

Value bundle_value(const Instance & inst, int agent, std::span<const int> bundle);
/// Largest single-item value; 0 for an empty bundle.
Value max_item_value(const Instance & inst, int agent, std::span<const int> bundle);
/// Smallest single-item value; 0 for an empty bundle.
Value min_item_value(const Instance & inst, int agent, std::span<const int> bundle);

// ---- fairness predicates --------------------------------------------------

/// Agent `agent` holding bundle k does not envy any other bundle after
/// dropping that bundle's most valuable item.
bool is_ef1_satisfied(const Instance & inst, int agent, int k, const Partition & p);

bool is_symef1(const Instance & inst, const Partition & p);
bool is_symefx(const Instance & inst, const Partition & p);
bool is_balanced(const Partition & p);

/// Classic (non-symmetric) EF1 for an assignment.
bool is_ef1(const Instance & inst, const Assignment & a);

/// A failing (agent, held bundle, envied bundle) triple with both sides of
/// the inequality `held >= envied - removable`.
struct Violation {
    int agent;
    int held;
    int envied;
    Value lhs;
    Value rhs;
};

enum class EnvyRelaxation { any_good_max, any_good_min };

/// First violated triple in (agent, held, envied) lexicographic order.
std::optional<Violation> find_symmetric_violation(const Instance & inst, const Partition & p,
                                                  EnvyRelaxation relax = EnvyRelaxation::any_good_max);
std::optional<Violation> find_ef1_violation(const Instance & inst, const Assignment & a);

BigInt nash_welfare(const Instance & inst, const Assignment & a);

/// Every item is positively valued by someone and no two item columns coincide.
bool items_distinct(const Instance & inst);

} // namespace symef1
