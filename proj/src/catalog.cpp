#include "mathieu/doublepoint.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#ifndef MATHIEU_DATA_DIR
#define MATHIEU_DATA_DIR "data"
#endif

namespace mathieu {

std::string default_catalog_path() {
    if (const char* p = std::getenv("MATHIEU_CATALOG")) return p;
    return std::string(MATHIEU_DATA_DIR) + "/double_points_seed.txt";
}

std::vector<CatalogSeed> load_catalog(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open catalog file " + path);
    std::vector<CatalogSeed> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ss(line);
        CatalogSeed s;
        if (!(ss >> s.m_type)) continue;
        for (auto& t : s.text)
            if (!(ss >> t)) throw Error(path + ":" + std::to_string(lineno) + ": expected 5 fields");
        s.q = {std::stod(s.text[0]), std::stod(s.text[1])};
        s.a = {std::stod(s.text[2]), std::stod(s.text[3])};
        out.push_back(s);
    }
    return out;
}

bool agrees_to_printed_figures(double x, const std::string& entry) {
    auto e = entry.find_first_of("eE");
    if (e == std::string::npos) throw DomainError("table entry without exponent: " + entry);
    int expo = std::stoi(entry.substr(e + 1));
    auto dot = entry.find('.');
    int decimals = dot == std::string::npos ? 0 : static_cast<int>(e - dot - 1);
    double unit = std::pow(10.0, expo - decimals);
    double v = std::stod(entry);
    return std::fabs(x - v) <= 0.5 * unit * (1 + 1e-9);
}

}  // namespace mathieu
