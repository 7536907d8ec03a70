#include "symef1/core.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

namespace symef1 {

namespace {

std::vector<std::string_view> split_lines(std::string_view text)
{
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start < text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos) {
            lines.push_back(text.substr(start));
            break;
        }
        lines.push_back(text.substr(start, end - start));
        start = end + 1;
    }
    for (auto & l : lines)
        if (! l.empty() && l.back() == '\r')
            l.remove_suffix(1);
    return lines;
}

std::vector<std::string_view> split_tokens(std::string_view line)
{
    std::vector<std::string_view> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t'))
            ++i;
        auto j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t')
            ++j;
        if (j > i)
            tokens.push_back(line.substr(i, j - i));
        i = j;
    }
    return tokens;
}

bool is_blank(std::string_view line)
{
    return std::all_of(line.begin(), line.end(), [](char c) { return c == ' ' || c == '\t'; });
}

bool is_comment(std::string_view line)
{
    auto pos = line.find_first_not_of(" \t");
    return pos != std::string_view::npos && line[pos] == '#';
}

std::int64_t parse_nonnegative(std::string_view token, int line)
{
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (ec != std::errc{} || ptr != token.data() + token.size())
        throw ParseError(line, "expected a nonnegative integer, got '" + std::string(token) + "'");
    if (v < 0)
        throw ParseError(line, "negative value '" + std::string(token) + "'");
    return v;
}

std::string read_file(const std::string & path)
{
    std::ifstream in(path, std::ios::binary);
    if (! in)
        throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void check_item(int item, int items)
{
    if (item < 0 || item >= items)
        throw std::out_of_range("item index " + std::to_string(item) + " out of range");
}

} // namespace

ParseError::ParseError(int line, const std::string & what) :
    std::runtime_error("line " + std::to_string(line) + ": " + what),
    line_(line)
{
}

Instance::Instance(int agents, int items, std::vector<Value> values) :
    agents_(agents),
    items_(items),
    values_(std::move(values))
{
    if (agents < 1)
        throw std::invalid_argument("an instance needs at least one agent");
    if (items < 0)
        throw std::invalid_argument("negative item count");
    if (values_.size() != static_cast<std::size_t>(agents) * static_cast<std::size_t>(items))
        throw std::invalid_argument("valuation matrix has the wrong number of entries");
    if (std::any_of(values_.begin(), values_.end(), [](Value v) { return v < 0; }))
        throw std::invalid_argument("valuations must be nonnegative");
}

Instance::Instance(std::initializer_list<std::initializer_list<Value>> rows)
{
    if (rows.size() == 0)
        throw std::invalid_argument("an instance needs at least one agent");
    auto items = rows.begin()->size();
    std::vector<Value> values;
    for (auto & r : rows) {
        if (r.size() != items)
            throw std::invalid_argument("ragged valuation matrix");
        values.insert(values.end(), r.begin(), r.end());
    }
    *this = Instance(static_cast<int>(rows.size()), static_cast<int>(items), std::move(values));
}

std::span<const Value> Instance::row(int agent) const
{
    if (agent < 0 || agent >= agents_)
        throw std::out_of_range("agent index out of range");
    return std::span<const Value>(values_).subspan(static_cast<std::size_t>(agent) * items_, items_);
}

std::size_t Instance::index(int agent, int item) const
{
    return static_cast<std::size_t>(agent) * static_cast<std::size_t>(items_) + static_cast<std::size_t>(item);
}

Partition::Partition(std::vector<Bundle> b) :
    bundles(std::move(b))
{
    for (auto & bundle : bundles)
        std::sort(bundle.begin(), bundle.end());
}

Partition Partition::empty(int bundle_count)
{
    Partition p;
    p.bundles.resize(static_cast<std::size_t>(bundle_count));
    return p;
}

int Partition::item_count() const
{
    int total = 0;
    for (auto & b : bundles)
        total += static_cast<int>(b.size());
    return total;
}

const Bundle & Assignment::bundle_of(int agent) const
{
    auto it = std::find(owner.begin(), owner.end(), agent);
    if (it == owner.end())
        throw std::invalid_argument("agent owns no bundle");
    return partition[static_cast<int>(it - owner.begin())];
}

void validate_partial_partition(const Partition & p, int bundle_count, int items)
{
    if (p.size() != bundle_count)
        throw std::invalid_argument("partition has " + std::to_string(p.size()) + " bundles, expected "
                                    + std::to_string(bundle_count));
    std::vector<char> seen(static_cast<std::size_t>(items), 0);
    for (auto & b : p.bundles)
        for (int j : b) {
            check_item(j, items);
            if (seen[static_cast<std::size_t>(j)])
                throw std::invalid_argument("item " + std::to_string(j + 1) + " appears twice");
            seen[static_cast<std::size_t>(j)] = 1;
        }
}

void validate_partition(const Partition & p, int bundle_count, int items)
{
    validate_partial_partition(p, bundle_count, items);
    if (p.item_count() != items)
        throw std::invalid_argument("partition does not cover every item");
}

void validate_assignment(const Assignment & a, int agents, int items)
{
    validate_partition(a.partition, agents, items);
    if (static_cast<int>(a.owner.size()) != agents)
        throw std::invalid_argument("owner map has the wrong length");
    std::vector<int> sorted = a.owner;
    std::sort(sorted.begin(), sorted.end());
    for (int i = 0; i < agents; ++i)
        if (sorted[static_cast<std::size_t>(i)] != i)
            throw std::invalid_argument("owner map is not a permutation of the agents");
}

Instance parse_instance(std::string_view text)
{
    auto lines = split_lines(text);
    std::size_t li = 0;
    auto next_content = [&]() -> std::optional<std::pair<int, std::vector<std::string_view>>> {
        while (li < lines.size()) {
            auto line = lines[li++];
            if (is_blank(line) || is_comment(line))
                continue;
            return std::pair{static_cast<int>(li), split_tokens(line)};
        }
        return std::nullopt;
    };

    auto header = next_content();
    if (! header)
        throw ParseError(static_cast<int>(lines.size()) + 1, "missing 'n m' header");
    auto & [hline, htok] = *header;
    if (htok.size() != 2)
        throw ParseError(hline, "header must be 'n m'");
    auto n = parse_nonnegative(htok[0], hline);
    auto m = parse_nonnegative(htok[1], hline);
    if (n < 1)
        throw ParseError(hline, "agent count must be at least 1");
    if (n > 1'000'000 || m > 1'000'000)
        throw ParseError(hline, "instance dimensions are unreasonably large");

    std::vector<Value> values;
    values.reserve(static_cast<std::size_t>(n * m));
    for (std::int64_t i = 0; i < n; ++i) {
        auto row = next_content();
        if (! row) {
            // an m = 0 instance may legitimately have no row lines at all
            if (m == 0)
                break;
            throw ParseError(static_cast<int>(lines.size()) + 1,
                             "expected " + std::to_string(n) + " valuation rows, found " + std::to_string(i));
        }
        auto & [rline, rtok] = *row;
        if (static_cast<std::int64_t>(rtok.size()) != m)
            throw ParseError(rline, "expected " + std::to_string(m) + " values, found " + std::to_string(rtok.size()));
        for (auto t : rtok)
            values.push_back(parse_nonnegative(t, rline));
    }
    if (auto extra = next_content())
        throw ParseError(extra->first, "unexpected content after the last valuation row");
    return Instance(static_cast<int>(n), static_cast<int>(m), std::move(values));
}

std::string format_instance(const Instance & inst)
{
    std::ostringstream out;
    out << inst.agents() << ' ' << inst.items() << '\n';
    for (int i = 0; i < inst.agents(); ++i) {
        auto r = inst.row(i);
        for (std::size_t j = 0; j < r.size(); ++j)
            out << (j ? " " : "") << r[j];
        out << '\n';
    }
    return out.str();
}

Partition parse_partition(std::string_view text, int bundle_count, int items)
{
    auto lines = split_lines(text);
    std::vector<std::pair<int, std::string_view>> content;
    for (std::size_t i = 0; i < lines.size(); ++i)
        if (! is_comment(lines[i]))
            content.emplace_back(static_cast<int>(i + 1), lines[i]);

    // surplus blank lines at the end carry no bundles
    while (static_cast<int>(content.size()) > bundle_count && is_blank(content.back().second))
        content.pop_back();
    if (static_cast<int>(content.size()) > bundle_count)
        throw ParseError(content[static_cast<std::size_t>(bundle_count)].first,
                         "more than " + std::to_string(bundle_count) + " bundles");

    Partition p = Partition::empty(bundle_count);
    std::vector<int> seen_on(static_cast<std::size_t>(items), 0);
    for (std::size_t k = 0; k < content.size(); ++k) {
        auto [line, body] = content[k];
        for (auto t : split_tokens(body)) {
            auto idx = parse_nonnegative(t, line);
            if (idx < 1 || idx > items)
                throw ParseError(line, "item index " + std::string(t) + " out of range 1.." + std::to_string(items));
            auto j = static_cast<int>(idx - 1);
            if (seen_on[static_cast<std::size_t>(j)])
                throw ParseError(line, "item " + std::string(t) + " already placed on line "
                                           + std::to_string(seen_on[static_cast<std::size_t>(j)]));
            seen_on[static_cast<std::size_t>(j)] = line;
            p[static_cast<int>(k)].push_back(j);
        }
        std::sort(p[static_cast<int>(k)].begin(), p[static_cast<int>(k)].end());
    }
    if (p.item_count() != items)
        throw ParseError(static_cast<int>(lines.size()), "partition does not cover all " + std::to_string(items) + " items");
    return p;
}

std::string format_partition(const Partition & p)
{
    std::ostringstream out;
    for (auto & b : p.bundles) {
        for (std::size_t x = 0; x < b.size(); ++x)
            out << (x ? " " : "") << b[x] + 1;
        out << '\n';
    }
    return out.str();
}

Instance load_instance(const std::string & path)
{
    return parse_instance(read_file(path));
}

Partition load_partition(const std::string & path, int bundle_count, int items)
{
    return parse_partition(read_file(path), bundle_count, items);
}

Value bundle_value(const Instance & inst, int agent, std::span<const int> bundle)
{
    auto r = inst.row(agent);
    Value total = 0;
    for (int j : bundle) {
        check_item(j, inst.items());
        total += r[static_cast<std::size_t>(j)];
    }
    return total;
}

Value max_item_value(const Instance & inst, int agent, std::span<const int> bundle)
{
    auto r = inst.row(agent);
    Value best = 0;
    for (int j : bundle) {
        check_item(j, inst.items());
        best = std::max(best, r[static_cast<std::size_t>(j)]);
    }
    return best;
}

Value min_item_value(const Instance & inst, int agent, std::span<const int> bundle)
{
    if (bundle.empty())
        return 0;
    auto r = inst.row(agent);
    Value best = r[static_cast<std::size_t>(bundle.front())];
    for (int j : bundle) {
        check_item(j, inst.items());
        best = std::min(best, r[static_cast<std::size_t>(j)]);
    }
    return best;
}

bool is_ef1_satisfied(const Instance & inst, int agent, int k, const Partition & p)
{
    if (agent < 0 || agent >= inst.agents())
        throw std::out_of_range("agent index out of range");
    if (k < 0 || k >= p.size())
        throw std::out_of_range("bundle index out of range");
    auto held = bundle_value(inst, agent, p[k]);
    for (int l = 0; l < p.size(); ++l)
        if (l != k && held < bundle_value(inst, agent, p[l]) - max_item_value(inst, agent, p[l]))
            return false;
    return true;
}

std::optional<Violation> find_symmetric_violation(const Instance & inst, const Partition & p, EnvyRelaxation relax)
{
    if (p.size() != inst.agents())
        throw std::invalid_argument("partition has " + std::to_string(p.size()) + " bundles for "
                                    + std::to_string(inst.agents()) + " agents");
    const int n = inst.agents();
    std::vector<Value> value(static_cast<std::size_t>(n)), reduced(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        for (int k = 0; k < n; ++k) {
            value[k] = bundle_value(inst, i, p[k]);
            auto removable = relax == EnvyRelaxation::any_good_max ? max_item_value(inst, i, p[k])
                                                                   : min_item_value(inst, i, p[k]);
            reduced[k] = value[k] - removable;
        }
        for (int k = 0; k < n; ++k)
            for (int l = 0; l < n; ++l)
                if (l != k && value[k] < reduced[l])
                    return Violation{i, k, l, value[k], reduced[l]};
    }
    return std::nullopt;
}

bool is_symef1(const Instance & inst, const Partition & p)
{
    return ! find_symmetric_violation(inst, p, EnvyRelaxation::any_good_max);
}

bool is_symefx(const Instance & inst, const Partition & p)
{
    return ! find_symmetric_violation(inst, p, EnvyRelaxation::any_good_min);
}

bool is_balanced(const Partition & p)
{
    if (p.bundles.empty())
        return true;
    auto [lo, hi] = std::minmax_element(p.bundles.begin(), p.bundles.end(),
                                        [](const Bundle & a, const Bundle & b) { return a.size() < b.size(); });
    return hi->size() - lo->size() <= 1;
}

std::optional<Violation> find_ef1_violation(const Instance & inst, const Assignment & a)
{
    validate_assignment(a, inst.agents(), inst.items());
    for (int k = 0; k < a.partition.size(); ++k) {
        int i = a.owner[static_cast<std::size_t>(k)];
        auto held = bundle_value(inst, i, a.partition[k]);
        for (int l = 0; l < a.partition.size(); ++l) {
            if (l == k)
                continue;
            auto rhs = bundle_value(inst, i, a.partition[l]) - max_item_value(inst, i, a.partition[l]);
            if (held < rhs)
                return Violation{i, k, l, held, rhs};
        }
    }
    return std::nullopt;
}

bool is_ef1(const Instance & inst, const Assignment & a)
{
    return ! find_ef1_violation(inst, a);
}

BigInt nash_welfare(const Instance & inst, const Assignment & a)
{
    validate_assignment(a, inst.agents(), inst.items());
    BigInt product = 1;
    for (int k = 0; k < a.partition.size(); ++k)
        product *= bundle_value(inst, a.owner[static_cast<std::size_t>(k)], a.partition[k]);
    return product;
}

bool items_distinct(const Instance & inst)
{
    std::set<std::vector<Value>> columns;
    for (int j = 0; j < inst.items(); ++j) {
        std::vector<Value> col;
        bool positive = false;
        for (int i = 0; i < inst.agents(); ++i) {
            col.push_back(inst.value(i, j));
            positive = positive || inst.value(i, j) > 0;
        }
        if (! positive || ! columns.insert(std::move(col)).second)
            return false;
    }
    return true;
}

} // namespace symef1
