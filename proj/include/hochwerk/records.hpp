#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "hochwerk/hochschild.hpp"
#include "hochwerk/theorems.hpp"

namespace hochwerk {

// Machine-readable records. Keys keep insertion order and carry a schema tag
// so emitted streams re-parse to identical documents; no timings and no
// floats, byte-for-byte reproducible for a fixed instance and flag set.
using Record = nlohmann::ordered_json;

inline constexpr const char* kRecordSchema = "hochwerk.record.v1";

inline Record record_header(const std::string& op) {
    Record r;
    r["schema"] = kRecordSchema;
    r["op"] = op;
    return r;
}

inline Record dims_record(const std::string& op, const std::string& algebra,
                          const std::string& coeff, Index max_degree,
                          const std::vector<Index>& dims) {
    Record r = record_header(op);
    r["algebra"] = algebra;
    r["coeff"] = coeff;
    r["max_degree"] = max_degree;
    r["dims"] = dims;
    r["verdict"] = "ok";
    return r;
}

inline Record complex_report_record(const std::string& algebra, const std::string& coeff,
                                    const ComplexReport& rep) {
    Record r = record_header("complex_report");
    r["algebra"] = algebra;
    r["coeff"] = coeff;
    r["side"] = rep.side == ComplexSide::Cochain ? "cochain" : "chain";
    r["max_degree"] = rep.max_degree;
    r["square_zero_certified"] = rep.square_zero_certified;
    Record rows = Record::array();
    for (const DegreeReport& d : rep.degrees) {
        Record row;
        row["degree"] = d.degree;
        row["space_dim"] = d.space_dim;
        row["out_rank"] = d.out_rank;
        row["in_rank"] = d.in_rank;
        row["kernel_dim"] = d.kernel_dim;
        row["homology_dim"] = d.homology_dim;
        rows.push_back(std::move(row));
    }
    r["degrees"] = std::move(rows);
    r["verdict"] = "ok";
    return r;
}

inline Record trace_record(const std::string& algebra, Index dim) {
    Record r = record_header("trace");
    r["algebra"] = algebra;
    r["dim"] = dim;
    r["verdict"] = "ok";
    return r;
}

inline Record verification_record(const VerificationRecord& v) {
    Record r = record_header("verify");
    r["theorem"] = v.theorem;
    r["instance"] = v.instance;
    r["max_degree"] = v.max_degree;
    r["lhs"] = v.lhs;
    r["rhs"] = v.rhs;
    Record details;
    for (const auto& [k, val] : v.details) details[k] = val;
    r["details"] = std::move(details);
    r["verdict"] = v.verdict();
    return r;
}

inline std::string record_line(const Record& r) { return r.dump(); }

// Re-parses a record stream (one JSON object per line). Round-trips exactly.
inline std::vector<Record> parse_record_lines(const std::string& text) {
    std::vector<Record> out;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string::npos) end = text.size();
        std::string line = text.substr(pos, end - pos);
        pos = end + 1;
        if (line.empty()) continue;
        Record r = Record::parse(line, nullptr, false);
        if (r.is_discarded()) throw ParseError("record stream line is not valid JSON");
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace hochwerk
