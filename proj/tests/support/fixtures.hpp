#pragma once

#include <string>

#include "omorse/arrangement.hpp"
#include "oracles.hpp"

inline std::string fixture(const std::string& name) { return std::string(OMORSE_FIXTURES) + "/" + name; }

inline const oracle::IMatrix kLine1{{1}};
inline const oracle::IMatrix kHex3{{1, 0}, {0, 1}, {-1, 1}};
inline const oracle::IMatrix kK3{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
