#include "eistheta/json_io.hpp"

#include <sstream>

namespace eistheta::io {

nlohmann::json coeff_table_to_json(const CoeffTable& t) {
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& [T, v] : t.entries)
        entries.push_back(nlohmann::json{{"two_t", matrix_to_json(T)}, {"value", rat_to_json(v)}});
    return nlohmann::json{{"degree", t.degree}, {"bound", t.bound}, {"entries", entries}};
}

std::string coeff_table_to_csv(const CoeffTable& t) {
    std::ostringstream os;
    os << "two_t,det_two_t,num,den\n";
    for (const auto& [T, v] : t.entries) {
        os << '"' << T.serialize() << '"' << ',' << T.det_two_t().get_str() << ','
           << v.get_num().get_str() << ',' << v.get_den().get_str() << '\n';
    }
    return os.str();
}

}  // namespace eistheta::io
