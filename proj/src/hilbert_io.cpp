#include "qlogic/hilbert_io.hpp"

#include <array>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace qlogic::hilbert {

nlohmann::json matrix_to_json(const ComplexMatrix& m) {
    nlohmann::json re = nlohmann::json::array();
    nlohmann::json im = nlohmann::json::array();
    for (Index i = 0; i < m.rows(); ++i) {
        nlohmann::json re_row = nlohmann::json::array();
        nlohmann::json im_row = nlohmann::json::array();
        for (Index j = 0; j < m.cols(); ++j) {
            re_row.push_back(m(i, j).real());
            im_row.push_back(m(i, j).imag());
        }
        re.push_back(std::move(re_row));
        im.push_back(std::move(im_row));
    }
    return {{"dim", m.rows()}, {"re", std::move(re)}, {"im", std::move(im)}};
}

ComplexMatrix matrix_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("dim") || !j.contains("re") || !j.contains("im")) {
        throw std::invalid_argument("matrix JSON needs keys dim, re, im");
    }
    if (!j["dim"].is_number_integer() || j["dim"].get<long long>() < 1) {
        throw std::invalid_argument("matrix JSON: dim must be a positive integer");
    }
    const auto d = j["dim"].get<Index>();
    const auto& re = j["re"];
    const auto& im = j["im"];
    auto check_rows = [d](const nlohmann::json& part, const char* name) {
        if (!part.is_array() || static_cast<Index>(part.size()) != d) {
            throw std::invalid_argument(std::string("matrix JSON: ") + name + " must have dim rows");
        }
        for (const auto& row : part) {
            if (!row.is_array() || static_cast<Index>(row.size()) != d) {
                throw std::invalid_argument(std::string("matrix JSON: ") + name + " rows must have dim entries");
            }
            for (const auto& x : row) {
                if (!x.is_number()) throw std::invalid_argument(std::string("matrix JSON: non-numeric entry in ") + name);
            }
        }
    };
    check_rows(re, "re");
    check_rows(im, "im");
    ComplexMatrix m(d, d);
    for (Index r = 0; r < d; ++r)
        for (Index c = 0; c < d; ++c) m(r, c) = Complex(re[r][c].get<double>(), im[r][c].get<double>());
    return m;
}

std::string quasi_prob_to_csv(const QuasiProbTable& t) {
    std::string out = "a,b,value\n";
    char buf[64];
    for (int a = 1; a >= 0; --a) {
        for (int b = 1; b >= 0; --b) {
            std::snprintf(buf, sizeof buf, "%d,%d,%.17g\n", a, b, t.at(a, b));
            out += buf;
        }
    }
    return out;
}

QuasiProbTable quasi_prob_from_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || (line != "a,b,value" && line != "a,b,value\r")) {
        throw std::invalid_argument("quasi-probability CSV: header must be a,b,value");
    }
    QuasiProbTable t;
    std::array<bool, 4> seen{};
    int rows = 0;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        int a = -1;
        int b = -1;
        double v = 0.0;
        char tail = 0;
        if (std::sscanf(line.c_str(), "%d,%d,%lf%c", &a, &b, &v, &tail) != 3 || a < 0 || a > 1 || b < 0 || b > 1) {
            throw std::invalid_argument("quasi-probability CSV: bad row '" + line + "'");
        }
        const auto idx = static_cast<std::size_t>(2 * a + b);
        if (seen[idx]) throw std::invalid_argument("quasi-probability CSV: duplicate cell in '" + line + "'");
        seen[idx] = true;
        t.cells[idx] = v;
        ++rows;
    }
    if (rows != 4) throw std::invalid_argument("quasi-probability CSV: expected 4 rows");
    return t;
}

}  // namespace qlogic::hilbert
