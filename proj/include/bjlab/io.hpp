#pragma once

// JSON and CSV serialization. JSON is the single source of truth for every
// report the CLI emits; nlohmann::json keeps object keys sorted and prints
// doubles with round-trip precision, so identical inputs yield byte identical
// documents. Matrices round-trip exactly through both the CSV form and the
// JSON envelope.

#include <sstream>
#include <string>

#include <json.hpp>

#include "operators.hpp"

namespace bjlab {

using json = nlohmann::json;

inline json to_json(const vec& v) {
    json a = json::array();
    for (double c : v) a.push_back(c);
    return a;
}

inline vec vec_from_json(const json& j) {
    if (!j.is_array()) throw parse_error("expected a JSON array of numbers");
    vec v;
    v.reserve(j.size());
    for (const auto& c : j) {
        if (!c.is_number()) throw parse_error("expected a JSON array of numbers");
        v.push_back(c.get<double>());
    }
    return v;
}

inline json to_json(const Range& r) { return json{{"lo", r.lo}, {"hi", r.hi}}; }

inline json to_json(const OrthoVerdict& v) {
    json j;
    j["decision"] = to_string(v.decision);
    j["oracle"] = v.oracle;
    if (v.min) {
        j["lambda_star"] = v.min->lambda_star;
        j["value"] = v.min->value;
    }
    if (v.range) j["range"] = to_json(*v.range);
    if (v.witness_plus) j["witness_plus_block"] = *v.witness_plus;
    if (v.witness_minus) j["witness_minus_block"] = *v.witness_minus;
    return j;
}

inline json to_json(const SearchOutcome& s) {
    json j;
    j["found"] = s.found;
    j["rounds_used"] = s.rounds_used;
    j["best_ratio"] = s.best_ratio;
    if (s.found) {
        j["y"] = to_json(s.y);
        j["lambda_star"] = s.lambda_star;
        j["reverse_value"] = s.reverse_value;
        j["margin"] = s.margin;
    }
    return j;
}

// Witness bundle: enough to replay the refutation by hand.
inline json witness_to_json(const Space& S, const vec& f, const SymWitness& w, const char* direction) {
    json j;
    j["space"] = S.to_string();
    j["f"] = to_json(f);
    j["g"] = to_json(w.g);
    j["direction"] = direction;
    j["note"] = w.note;
    j["forward_range"] = json{{"lo", w.forward_lo}, {"hi", w.forward_hi}};
    j["lambda_star"] = w.lambda_star;
    j["reverse_value"] = w.reverse_value;
    j["margin"] = w.margin;
    if (w.mu != 0.0) j["mu"] = w.mu;
    return j;
}

// ---------------------------------------------------------------------------
// matrix I/O

inline std::string matrix_to_csv(const Operator& T) {
    std::string out;
    for (std::size_t i = 0; i < T.rows(); ++i) {
        for (std::size_t j = 0; j < T.cols(); ++j) {
            if (j) out += ',';
            out += format_double(T.at(i, j));
        }
        out += '\n';
    }
    return out;
}

inline Operator matrix_from_csv(const Space& domain, const Space& codomain, const std::string& text) {
    vec entries;
    entries.reserve(domain.dim() * codomain.dim());
    std::size_t rows = 0;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        ++rows;
        std::size_t pos = 0, count = 0;
        while (pos <= line.size()) {
            const std::size_t next = line.find(',', pos);
            const std::string cell = line.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
            double v = 0;
            const auto res = std::from_chars(cell.data(), cell.data() + cell.size(), v);
            if (res.ec != std::errc() || res.ptr != cell.data() + cell.size())
                throw parse_error("matrix_from_csv: bad cell '" + cell + "'");
            entries.push_back(v);
            ++count;
            if (next == std::string::npos) break;
            pos = next + 1;
        }
        if (count != domain.dim()) throw dimension_error("matrix_from_csv: row width mismatch");
    }
    if (rows != codomain.dim()) throw dimension_error("matrix_from_csv: row count mismatch");
    return make_operator(domain, codomain, std::move(entries));
}

inline json operator_to_json(const Operator& T) {
    json rows = json::array();
    for (std::size_t i = 0; i < T.rows(); ++i) {
        json r = json::array();
        for (std::size_t j = 0; j < T.cols(); ++j) r.push_back(T.at(i, j));
        rows.push_back(std::move(r));
    }
    return json{{"domain", T.domain.to_string()}, {"codomain", T.codomain.to_string()}, {"entries", rows}};
}

inline Operator operator_from_json(const json& j) {
    const Space dom = Space::parse(j.at("domain").get<std::string>());
    const Space cod = Space::parse(j.at("codomain").get<std::string>());
    const auto& rows = j.at("entries");
    if (!rows.is_array() || rows.size() != cod.dim())
        throw dimension_error("operator_from_json: row count mismatch");
    vec entries;
    entries.reserve(dom.dim() * cod.dim());
    for (const auto& r : rows) {
        if (!r.is_array() || r.size() != dom.dim())
            throw dimension_error("operator_from_json: row width mismatch");
        for (const auto& c : r) entries.push_back(c.get<double>());
    }
    return make_operator(dom, cod, std::move(entries));
}

} // namespace bjlab
