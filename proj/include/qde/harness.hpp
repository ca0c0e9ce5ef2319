#ifndef QDE_HARNESS_HPP
#define QDE_HARNESS_HPP

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "json.hpp"

#include "qde/error.hpp"
#include "qde/integer.hpp"

namespace qde {

struct CurveRecord
{
    std::string label;
    Integer rank;
    Integer sha_order;
    std::optional<Integer> torsion_order;
    std::optional<Integer> conductor;

    friend bool operator==(CurveRecord const &, CurveRecord const &) = default;
};

enum class curve_format { csv, json };

inline curve_format parse_curve_format(std::string_view name)
{
    if (name == "csv")
        return curve_format::csv;
    if (name == "json")
        return curve_format::json;
    throw domain_error("unknown curve data format '" + std::string(name) + "'");
}

// Every row-level problem found in a curve file, one message each.
class curve_data_error : public error
{
    std::vector<std::string> problems_;

    static std::string join(std::vector<std::string> const & v)
    {
        std::string s;
        for (auto const & p : v)
            s += (s.empty() ? "" : "\n") + p;
        return s;
    }

  public:
    explicit curve_data_error(std::vector<std::string> problems)
        : error(join(problems)), problems_(std::move(problems))
    {
    }

    std::vector<std::string> const & problems() const { return problems_; }
};

struct ParsedCurves
{
    std::vector<CurveRecord> records;
    std::vector<std::string> warnings;
};

namespace detail {

inline std::string trim(std::string_view s)
{
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b])))
        ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1])))
        --e;
    return std::string(s.substr(b, e - b));
}

inline std::vector<std::string> split_csv(std::string const & line)
{
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        std::size_t comma = line.find(',', start);
        out.push_back(trim(std::string_view(line).substr(start, comma - start)));
        if (comma == std::string::npos)
            break;
        start = comma + 1;
    }
    return out;
}

inline std::optional<Integer> parse_decimal(std::string const & s)
{
    std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (i == s.size())
        return std::nullopt;
    for (std::size_t k = i; k < s.size(); ++k)
        if (!std::isdigit(static_cast<unsigned char>(s[k])))
            return std::nullopt;
    return Integer(s[0] == '+' ? s.substr(1) : s);
}

inline std::vector<std::string> const & curve_columns()
{
    static const std::vector<std::string> cols{"label", "rank", "sha_order", "torsion_order",
                                               "conductor"};
    return cols;
}

// Range checks shared by both formats; `where` prefixes each message.
inline void check_record(CurveRecord const & r, std::string const & where,
                         std::map<std::string, std::size_t> const & column_of,
                         std::vector<std::string> & problems)
{
    auto col = [&](std::string const & name) {
        auto it = column_of.find(name);
        return it == column_of.end() ? std::string(", field " + name)
                                     : ", column " + std::to_string(it->second) + " (" + name + ")";
    };
    if (r.label.empty())
        problems.push_back(where + col("label") + ": empty label");
    if (r.rank < 0)
        problems.push_back(where + col("rank") + ": negative rank " + r.rank.str());
    if (r.sha_order < 1)
        problems.push_back(where + col("sha_order") + ": sha_order must be >= 1, got "
                           + r.sha_order.str());
    if (r.torsion_order && *r.torsion_order < 1)
        problems.push_back(where + col("torsion_order") + ": torsion_order must be >= 1");
    if (r.conductor && *r.conductor < 1)
        problems.push_back(where + col("conductor") + ": conductor must be >= 1");
}

inline ParsedCurves parse_csv_curves(std::istream & in)
{
    ParsedCurves out;
    std::vector<std::string> problems;
    std::vector<std::string> header;
    std::map<std::string, std::size_t> column_of;
    std::set<std::string> labels;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        std::string t = trim(line);
        if (t.empty() || t[0] == '#')
            continue;
        auto fields = split_csv(t);
        if (header.empty()) {
            auto const & cols = curve_columns();
            bool ok = fields.size() >= 3 && fields.size() <= cols.size()
                && std::equal(fields.begin(), fields.begin() + 3, cols.begin());
            // optional columns keep their relative order
            std::size_t next = 3;
            for (std::size_t i = 3; ok && i < fields.size(); ++i) {
                auto it = std::find(cols.begin() + next, cols.end(), fields[i]);
                ok = it != cols.end();
                next = it - cols.begin() + 1;
            }
            if (!ok)
                throw curve_data_error({"line " + std::to_string(lineno)
                                        + ": header must be label,rank,sha_order"
                                          "[,torsion_order][,conductor]"});
            header = fields;
            for (std::size_t i = 0; i < header.size(); ++i)
                column_of[header[i]] = i + 1;
            continue;
        }
        std::string where = "line " + std::to_string(lineno);
        if (fields.size() != header.size()) {
            problems.push_back(where + ": expected " + std::to_string(header.size())
                               + " fields, got " + std::to_string(fields.size()));
            continue;
        }
        CurveRecord r;
        bool bad = false;
        for (std::size_t i = 0; i < header.size(); ++i) {
            if (header[i] == "label") {
                r.label = fields[i];
                continue;
            }
            auto v = parse_decimal(fields[i]);
            if (!v) {
                problems.push_back(where + ", column " + std::to_string(i + 1) + " (" + header[i]
                                   + "): not a base-10 integer: '" + fields[i] + "'");
                bad = true;
                continue;
            }
            if (header[i] == "rank")
                r.rank = *v;
            else if (header[i] == "sha_order")
                r.sha_order = *v;
            else if (header[i] == "torsion_order")
                r.torsion_order = *v;
            else
                r.conductor = *v;
        }
        if (bad)
            continue;
        std::size_t before = problems.size();
        check_record(r, where, column_of, problems);
        if (problems.size() != before)
            continue;
        if (!labels.insert(r.label).second) {
            problems.push_back(where + ", column 1 (label): duplicate label '" + r.label + "'");
            continue;
        }
        out.records.push_back(std::move(r));
    }
    if (!problems.empty())
        throw curve_data_error(std::move(problems));
    if (header.empty())
        out.warnings.push_back("curve file is empty; no records read");
    else if (out.records.empty())
        out.warnings.push_back("curve file has a header but no records");
    return out;
}

inline ParsedCurves parse_json_curves(std::istream & in)
{
    ParsedCurves out;
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (trim(text).empty()) {
        out.warnings.push_back("curve file is empty; no records read");
        return out;
    }
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (nlohmann::json::parse_error const & e) {
        throw curve_data_error({std::string("malformed JSON: ") + e.what()});
    }
    if (!doc.is_array())
        throw curve_data_error({"top-level JSON value must be an array of curve objects"});
    std::vector<std::string> problems;
    std::set<std::string> labels;
    std::map<std::string, std::size_t> no_columns;
    for (std::size_t i = 0; i < doc.size(); ++i) {
        std::string where = "record " + std::to_string(i + 1);
        auto const & obj = doc[i];
        if (!obj.is_object()) {
            problems.push_back(where + ": not an object");
            continue;
        }
        CurveRecord r;
        bool bad = false;
        for (auto const & [key, value] : obj.items()) {
            auto const & cols = curve_columns();
            if (std::find(cols.begin(), cols.end(), key) == cols.end()) {
                problems.push_back(where + ": unknown field '" + key + "'");
                bad = true;
            }
        }
        auto integer_field = [&](char const * name, bool required) -> std::optional<Integer> {
            if (!obj.contains(name)) {
                if (required) {
                    problems.push_back(where + ", field " + name + ": missing");
                    bad = true;
                }
                return std::nullopt;
            }
            auto const & v = obj[name];
            if (v.is_number_integer())
                return Integer(v.get<std::int64_t>());
            if (v.is_string())
                if (auto p = parse_decimal(v.get<std::string>()))
                    return p;
            problems.push_back(where + ", field " + name + ": not an integer");
            bad = true;
            return std::nullopt;
        };
        if (obj.contains("label") && obj["label"].is_string())
            r.label = obj["label"].get<std::string>();
        else {
            problems.push_back(where + ", field label: missing or not a string");
            bad = true;
        }
        auto rank = integer_field("rank", true);
        auto sha = integer_field("sha_order", true);
        r.torsion_order = integer_field("torsion_order", false);
        r.conductor = integer_field("conductor", false);
        if (bad)
            continue;
        r.rank = *rank;
        r.sha_order = *sha;
        std::size_t before = problems.size();
        check_record(r, where, no_columns, problems);
        if (problems.size() != before)
            continue;
        if (!labels.insert(r.label).second) {
            problems.push_back(where + ", field label: duplicate label '" + r.label + "'");
            continue;
        }
        out.records.push_back(std::move(r));
    }
    if (!problems.empty())
        throw curve_data_error(std::move(problems));
    if (out.records.empty())
        out.warnings.push_back("curve file contains no records");
    return out;
}

} // namespace detail

inline ParsedCurves parse_curves(std::istream & in, curve_format format)
{
    return format == curve_format::csv ? detail::parse_csv_curves(in)
                                       : detail::parse_json_curves(in);
}

/// Reads curve rows from a file; every malformed row is reported with its location.
inline ParsedCurves parse_curves(std::string const & path, curve_format format)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw domain_error("cannot open curve file '" + path + "'");
    return parse_curves(in, format);
}

struct ViolationRow
{
    std::string label;
    Integer rank;
    Integer sha_order;
    Integer predicted;

    friend bool operator==(ViolationRow const &, ViolationRow const &) = default;
};

struct RankTally
{
    Integer total = 0;
    Integer consistent = 0;
    Integer violations = 0;

    friend bool operator==(RankTally const &, RankTally const &) = default;
};

/// Consistency of |Sha| = (1 + rank)^2 over a dataset.
struct ValidationReport
{
    Integer total = 0;
    Integer consistent = 0;
    Integer violations = 0;
    std::vector<ViolationRow> violation_rows; // sorted by label
    std::map<Integer, RankTally> by_rank;

    friend bool operator==(ValidationReport const &, ValidationReport const &) = default;
};

inline Integer predicted_sha_order(Integer const & rank) { return (1 + rank) * (1 + rank); }

namespace detail {

inline ValidationReport validate_range(std::vector<CurveRecord> const & records, std::size_t begin,
                                       std::size_t end)
{
    ValidationReport rep;
    for (std::size_t i = begin; i < end; ++i) {
        auto const & r = records[i];
        Integer predicted = predicted_sha_order(r.rank);
        auto & tally = rep.by_rank[r.rank];
        ++rep.total;
        ++tally.total;
        if (r.sha_order == predicted) {
            ++rep.consistent;
            ++tally.consistent;
        } else {
            ++rep.violations;
            ++tally.violations;
            rep.violation_rows.push_back({r.label, r.rank, r.sha_order, predicted});
        }
    }
    return rep;
}

inline void merge_into(ValidationReport & acc, ValidationReport && part)
{
    acc.total += part.total;
    acc.consistent += part.consistent;
    acc.violations += part.violations;
    for (auto & row : part.violation_rows)
        acc.violation_rows.push_back(std::move(row));
    for (auto const & [rank, t] : part.by_rank) {
        auto & dst = acc.by_rank[rank];
        dst.total += t.total;
        dst.consistent += t.consistent;
        dst.violations += t.violations;
    }
}

} // namespace detail

/// Marks each record consistent iff sha_order == (1 + rank)^2. With jobs > 1
/// the records are split into contiguous chunks validated on separate threads;
/// the merged report is identical to the serial one.
inline ValidationReport validate(std::vector<CurveRecord> const & records, std::size_t jobs = 1)
{
    jobs = std::max<std::size_t>(1, std::min(jobs, records.size()));
    std::vector<ValidationReport> parts(jobs);
    std::size_t chunk = (records.size() + jobs - 1) / std::max<std::size_t>(jobs, 1);
    if (jobs == 1) {
        parts[0] = detail::validate_range(records, 0, records.size());
    } else {
        std::vector<std::thread> workers;
        for (std::size_t j = 0; j < jobs; ++j) {
            std::size_t b = std::min(records.size(), j * chunk);
            std::size_t e = std::min(records.size(), b + chunk);
            workers.emplace_back([&, j, b, e] { parts[j] = detail::validate_range(records, b, e); });
        }
        for (auto & w : workers)
            w.join();
    }
    ValidationReport rep;
    for (auto & p : parts)
        detail::merge_into(rep, std::move(p));
    std::sort(rep.violation_rows.begin(), rep.violation_rows.end(),
              [](ViolationRow const & x, ViolationRow const & y) { return x.label < y.label; });
    if (rep.consistent + rep.violations != rep.total)
        throw invariant_violation("validation counts do not add up");
    return rep;
}

} // namespace qde

#endif // QDE_HARNESS_HPP
