#include "mathieu/puiseux.hpp"

#include "json.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace mathieu {

double default_trust_radius(std::complex<double> q_star, const std::vector<CatalogSeed>& seeds) {
    double best = 1e300;
    for (const auto& s : seeds) {
        for (auto q : {s.q, std::conj(s.q), -s.q, -std::conj(s.q)}) {
            double d = std::abs(q - q_star);
            if (d > 1e-3 * (1 + std::abs(q_star)) && d < best) best = d;
        }
    }
    return best / 2;
}

namespace {

Rational make(std::int64_t n, std::int64_t d) {
    if (d < 0) {
        n = -n;
        d = -d;
    }
    std::int64_t g = std::gcd(n < 0 ? -n : n, d);
    if (g == 0) g = 1;
    return {n / g, d / g};
}

}  // namespace

RationalSeries smallq_eigenvalue_series(EigenClass cls, int order) {
    if (!order_matches(cls, order)) throw DomainError("smallq_eigenvalue_series: order does not match class");
    RationalSeries s;
    auto set = [&](std::initializer_list<Rational> c) {
        s.coeffs.assign(c);
        s.valid_through = static_cast<int>(s.coeffs.size()) - 1;
    };
    if (cls == EigenClass::CE_ODD && order == 1) {
        set({{1, 1}, {1, 1}, {-1, 8}, {-1, 64}, {-1, 1536}, {11, 36864}, {49, 589824}});
        return s;
    }
    if (cls == EigenClass::SE_ODD && order == 1) {
        // b_1(q) = a_1(-q)
        set({{1, 1}, {-1, 1}, {-1, 8}, {1, 64}, {-1, 1536}, {-11, 36864}, {49, 589824}});
        return s;
    }
    if (cls == EigenClass::CE_EVEN && order == 2) {
        set({{4, 1}, {0, 1}, {5, 12}, {0, 1}, {-763, 13824}, {0, 1}, {1002401, 79626240}});
        return s;
    }
    if (cls == EigenClass::CE_ODD && order == 3) {
        set({{9, 1}, {0, 1}, {1, 16}, {1, 64}, {13, 20480}, {-5, 16384}, {-1961, 23592960}});
        return s;
    }
    if (cls == EigenClass::CE_EVEN && order == 4) {
        set({{16, 1}, {0, 1}, {1, 30}, {0, 1}, {433, 864000}, {0, 1}, {-5701, 2721600000}});
        return s;
    }
    if (order >= 5) {
        // generic g: g^2 + q^2/(2(g^2-1)) + (5g^2+7) q^4 / (32 (g^2-4) (g^2-1)^3), same for both parities
        std::int64_t g = order, g2 = g * g;
        s.coeffs = {make(g2, 1), make(0, 1), make(1, 2 * (g2 - 1)), make(0, 1),
                    make(5 * g2 + 7, 32 * (g2 - 4) * (g2 - 1) * (g2 - 1) * (g2 - 1))};
        s.valid_through = 4;
        return s;
    }
    throw NotTabulated("smallq_eigenvalue_series: no tabulated series for " + class_name(cls) + " order " +
                       std::to_string(order));
}

std::vector<PrintedTableRow> load_printed_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("load_printed_table: cannot open " + path);
    std::vector<PrintedTableRow> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream is(line);
        PrintedTableRow r;
        if (!(is >> r.m_type)) continue;
        for (auto& t : r.text)
            if (!(is >> t)) throw DomainError("load_printed_table: short row: " + line);
        rows.push_back(r);
    }
    return rows;
}

std::string default_printed_table_path() {
    if (const char* p = std::getenv("MATHIEU_TABLE")) return p;
    return std::string(MATHIEU_DATA_DIR) + "/table_d.txt";
}

std::string format_table_complex(std::complex<double> z, int sig) {
    char re[64], im[64];
    std::snprintf(re, sizeof re, "%.*e", sig - 1, z.real());
    std::snprintf(im, sizeof im, "%+.*e", sig - 1, z.imag());
    return std::string(re) + im + "i";
}

std::string table_csv(const std::vector<TableRecord>& rows, int sig) {
    std::ostringstream os;
    std::size_t n_alpha = 0;
    for (auto& r : rows) n_alpha = std::max(n_alpha, r.alpha.size());
    os << "m,q_star,a_star";
    for (std::size_t k = 1; k <= n_alpha; ++k) os << ",alpha" << k;
    os << ",error\n";
    for (auto& r : rows) {
        os << r.m_type << ',' << format_table_complex(r.q_star, sig) << ',' << format_table_complex(r.a_star, sig);
        for (std::size_t k = 0; k < n_alpha; ++k)
            os << ',' << (k < r.alpha.size() ? format_table_complex(r.alpha[k], sig) : std::string());
        os << ',' << r.error << '\n';
    }
    return os.str();
}

std::string table_jsonl(const std::vector<TableRecord>& rows, int sig) {
    std::ostringstream os;
    auto pair = [&](std::complex<double> z) {
        char re[64], im[64];
        std::snprintf(re, sizeof re, "%.*e", sig - 1, z.real());
        std::snprintf(im, sizeof im, "%.*e", sig - 1, z.imag());
        return nlohmann::json::array({std::stod(re), std::stod(im)});
    };
    for (auto& r : rows) {
        nlohmann::json j;
        j["m"] = r.m_type;
        j["q_star"] = pair(r.q_star);
        j["a_star"] = pair(r.a_star);
        j["alpha"] = nlohmann::json::array();
        for (auto& a : r.alpha) j["alpha"].push_back(pair(a));
        if (!r.error.empty()) j["error"] = r.error;
        os << j.dump() << '\n';
    }
    return os.str();
}

}  // namespace mathieu
