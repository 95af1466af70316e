#include <cstdlib>
#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "intquant/fock.hpp"
#include "intquant/io.hpp"
#include "intquant/version.hpp"

using namespace intquant;

TEST(Io, DoubleFormattingRoundTrips) {
    for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, std::numeric_limits<double>::denorm_min()})
        EXPECT_EQ(std::strtod(format_double(v).c_str(), nullptr), v);
    EXPECT_EQ(format_double(0.0), "0");
}

TEST(Io, OperatorJsonRoundTrip) {
    const CMatrix D = displacement(PhasePoint(0.3, -0.8), 7);
    const auto j = operator_to_json(D);
    EXPECT_EQ(j["dim"], 7);
    const CMatrix back = operator_from_json(nlohmann::json::parse(json_document({{"operator", j}}, {})).at("operator"));
    EXPECT_EQ(max_abs(back - D), 0.0);
    EXPECT_THROW(operator_from_json(nlohmann::json{{"dim", 2}, {"entries", {{1, 0}}}}), std::invalid_argument);
    EXPECT_THROW(operator_from_json(nlohmann::json::object()), std::invalid_argument);
}

TEST(Io, CsvCarriesVersionAndConfig) {
    const std::string s = csv_document({{"a", "b"}, {{1.0, 0.5}}}, {{"dim", 3}});
    EXPECT_EQ(s, std::string("# version: ") + kVersionString + "\n# config: {\"dim\":3}\na,b\n1,0.5\n");
    EXPECT_THROW(csv_document({{"a"}, {{1.0, 2.0}}}, {}), std::logic_error);
}
