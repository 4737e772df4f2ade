#pragma once

#include "eistheta/half_integral.hpp"
#include "eistheta/lattice.hpp"
#include "eistheta/rational.hpp"

#include <json.hpp>

#include <string>

namespace eistheta::io {

using arith::Rat;
using global_forms::CoeffTable;

inline nlohmann::json rat_to_json(const Rat& x) {
    return nlohmann::json{{"num", x.get_num().get_str()}, {"den", x.get_den().get_str()}};
}

inline nlohmann::json valuation_to_json(const arith::Valuation& v) {
    if (v.is_infinite()) return nlohmann::json("inf");
    return nlohmann::json(v.value());
}

// matrices travel as row-major arrays of rows of 2T
inline nlohmann::json matrix_to_json(const HalfIntSym& T) {
    nlohmann::json rows = nlohmann::json::array();
    for (int i = 0; i < T.degree(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (int j = 0; j < T.degree(); ++j) row.push_back(T.two_t(i, j).get_si());
        rows.push_back(row);
    }
    return rows;
}

inline HalfIntSym matrix_from_json(const nlohmann::json& rows) {
    int n = static_cast<int>(rows.size());
    std::vector<arith::Int> e;
    for (const auto& row : rows) {
        if (static_cast<int>(row.size()) != n)
            throw std::domain_error("matrix_from_json: ragged rows");
        for (const auto& v : row) e.emplace_back(v.get<long>());
    }
    return HalfIntSym::from_two_t(n, std::move(e));
}

nlohmann::json coeff_table_to_json(const CoeffTable& t);
std::string coeff_table_to_csv(const CoeffTable& t);

}  // namespace eistheta::io
