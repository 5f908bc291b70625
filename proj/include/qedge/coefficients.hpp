// Copyright 2026 The qedge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Exact Maclaurin coefficients of the large-N joint SRM probability,
// (N/2) P(x) = sum_{r>=1} a_r x^{2r}, for the tabulated local dimensions.
// The same data ships as data/maclaurin_coefficients.csv; the embedded copy
// is the default and the file can replace it via QEDGE_DATA_DIR.

#ifndef QEDGE_COEFFICIENTS_HPP
#define QEDGE_COEFFICIENTS_HPP

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "qedge/bignum.hpp"
#include "qedge/errors.hpp"

namespace qedge {

struct RationalCoefficientTable {
    int d = 0;
    std::vector<BigRational> coeffs;  ///< coeffs[r-1] = a_r

    int order() const { return static_cast<int>(coeffs.size()); }
    const BigRational& a(int r) const { return coeffs.at(static_cast<std::size_t>(r - 1)); }
};

using CoefficientTables = std::map<int, RationalCoefficientTable>;

inline constexpr std::string_view kCoefficientFileName = "maclaurin_coefficients.csv";

inline constexpr std::string_view kEmbeddedCoefficientCsv = R"csv(# Copyright 2026 The qedge Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
# Maclaurin coefficients a_r of (N/2) P_SRM(x) = sum_r a_r x^(2r), N -> infinity
# format: d,r,numerator,denominator
# checksum fnv1a64=412541715c9402cf
d,r,numerator,denominator
2,1,2,1
2,2,0,1
2,3,-1,30
2,4,-1,35
2,5,-229,10080
2,6,-101,5544
2,7,-5725,384384
2,8,-5111,411840
2,9,-554293,52715520
2,10,-2137221,236487680
2,11,-249919231,31783944192
2,12,-76576105,11076222976
2,13,-10870862389,1772195676160
2,14,-8413125001,1533630873600
2,15,-1506595197973,304973453721600
3,1,4,1
3,2,-8,3
3,3,-1,15
3,4,0,1
3,5,3,560
3,6,3,616
3,7,739,192192
3,8,307,102960
3,9,1044347,448081920
3,10,874097,472975360
3,11,23645057,15891972096
3,12,5047729,4153583616
3,13,891227339,886097838080
3,14,168502693,200038809600
3,15,3749131111,5258162995200
3,16,9600936701,15756961775616
3,17,1398178715421307,2662296261608079360
4,1,6,1
4,2,-8,1
4,3,31,10
4,4,3,35
4,5,9,1120
4,6,0,1
4,7,-125,128128
4,8,-25,27456
4,9,-3875,5431296
4,10,-51075,94595072
4,11,-393277,963149824
4,12,-3454141,11076222976
4,13,-125777259,521234022400
4,14,-145143689,766815436800
4,15,-15293179829,101657817907200
4,16,-249322259,2059733565440
4,17,-174838753670533,1774864174405386240
8,1,14,1
8,2,-56,1
8,3,3353,30
8,4,-127,1
8,5,120347,1440
8,6,-11675,396
8,7,226243,54912
8,8,35777,411840
8,9,7310429,896163840
8,10,119175,94595072
8,11,1121953,4540563456
8,12,83349,1582317568
8,13,12326391,1265854054400
8,14,0,1
8,15,-20469449,11295313100800
8,16,-61408347,35015470612480
8,17,-24207914731,17927920953589760
)csv";

/// 64-bit FNV-1a.
inline std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

/// Parses the coefficient CSV. The checksum covers the data rows (after the
/// column header) joined by newlines without trailing whitespace.
inline CoefficientTables parse_coefficient_csv(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    std::string declared;
    std::string body;
    bool header_seen = false;
    CoefficientTables out;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') {
            auto pos = line.find("fnv1a64=");
            if (pos != std::string::npos) declared = line.substr(pos + 8);
            continue;
        }
        if (!header_seen) {
            if (line != "d,r,numerator,denominator") throw DataError("coefficient table: unexpected header '" + line + "'");
            header_seen = true;
            continue;
        }
        if (!body.empty()) body += '\n';
        body += line;
        std::vector<std::string> fields;
        std::stringstream ls(line);
        for (std::string f; std::getline(ls, f, ',');) fields.push_back(f);
        if (fields.size() != 4) throw DataError("coefficient table line " + std::to_string(line_no) + ": expected 4 fields");
        int d = 0, r = 0;
        try {
            d = std::stoi(fields[0]);
            r = std::stoi(fields[1]);
        } catch (const std::exception&) {
            throw DataError("coefficient table line " + std::to_string(line_no) + ": bad index");
        }
        auto& tab = out[d];
        tab.d = d;
        if (r != tab.order() + 1) throw DataError("coefficient table line " + std::to_string(line_no) + ": r out of sequence");
        tab.coeffs.push_back(parse_rational(fields[2] + "/" + fields[3]));
    }
    if (declared.empty()) throw DataError("coefficient table: missing checksum");
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(body)));
    if (declared != buf) {
        throw DataError("coefficient table: checksum mismatch (declared " + declared + ", computed " + buf + ")");
    }
    return out;
}

inline CoefficientTables load_coefficient_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw DataError("cannot open coefficient table '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_coefficient_csv(ss.str());
}

inline const CoefficientTables& embedded_coefficient_tables() {
    static const CoefficientTables tables = parse_coefficient_csv(kEmbeddedCoefficientCsv);
    return tables;
}

/// Tables from $QEDGE_DATA_DIR when set, otherwise the embedded copy.
inline CoefficientTables coefficient_tables_from_environment() {
    if (const char* dir = std::getenv("QEDGE_DATA_DIR"); dir && *dir) {
        return load_coefficient_file(std::string(dir) + "/" + std::string(kCoefficientFileName));
    }
    return embedded_coefficient_tables();
}

inline const RationalCoefficientTable& coefficient_table(int d, const CoefficientTables& tables) {
    auto it = tables.find(d);
    if (it == tables.end()) {
        throw NotTabulatedError("no exact coefficient table for d=" + std::to_string(d) +
                                " (tabulated: 2, 3, 4, 8); use estimate_low_order_coeffs for a numeric estimate");
    }
    return it->second;
}

inline const RationalCoefficientTable& coefficient_table(int d) { return coefficient_table(d, embedded_coefficient_tables()); }

}  // namespace qedge

#endif
