#pragma once

// Expected knowledge level for every integer score, as a literal table.

#include <array>

#include "tutor/enums.hpp"

namespace oracle {

using K = tutor::KnowledgeLevel;

inline constexpr std::array<K, 101> kKnowledgeTable{
    /*   0 */ K::Weak, K::Weak, K::Weak, K::Weak, K::Weak,
    /*   5 */ K::Weak, K::Weak, K::Weak, K::Weak, K::Weak,
    /*  10 */ K::Weak, K::Weak, K::Weak, K::Weak, K::Weak,
    /*  15 */ K::Weak, K::Weak, K::Weak, K::Weak, K::Weak,
    /*  20 */ K::Weak, K::Weak, K::Weak, K::Weak, K::Weak,
    /*  25 */ K::Weak, K::Weak, K::Weak, K::Weak, K::Weak,
    /*  30 */ K::Weak, K::Average, K::Average, K::Average, K::Average,
    /*  35 */ K::Average, K::Average, K::Average, K::Average, K::Average,
    /*  40 */ K::Average, K::Average, K::Average, K::Average, K::Average,
    /*  45 */ K::Average, K::Average, K::Average, K::Average, K::Average,
    /*  50 */ K::Average, K::Good, K::Good, K::Good, K::Good,
    /*  55 */ K::Good, K::Good, K::Good, K::Good, K::Good,
    /*  60 */ K::Good, K::Good, K::Good, K::Good, K::Good,
    /*  65 */ K::Good, K::Good, K::Good, K::Good, K::Good,
    /*  70 */ K::Good, K::VeryGood, K::VeryGood, K::VeryGood, K::VeryGood,
    /*  75 */ K::VeryGood, K::VeryGood, K::VeryGood, K::VeryGood, K::VeryGood,
    /*  80 */ K::VeryGood, K::VeryGood, K::VeryGood, K::VeryGood, K::VeryGood,
    /*  85 */ K::VeryGood, K::Excellent, K::Excellent, K::Excellent, K::Excellent,
    /*  90 */ K::Excellent, K::Excellent, K::Excellent, K::Excellent, K::Excellent,
    /*  95 */ K::Excellent, K::Excellent, K::Excellent, K::Excellent, K::Excellent,
    /* 100 */ K::Excellent,
};

}  // namespace oracle
