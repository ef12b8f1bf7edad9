#pragma once

#include <string>

#include "relgrade/model.hpp"

// Shared fixture pairs used across the unit, golden and acceptance tests.

namespace fixtures {

inline relgrade::Query q18() {
    return {"q18", "dog age by teeth"};
}

inline relgrade::Passage p4068() {
    return {"p4068",
            "Puppies start to get their puppy teeth at the age of 3 to 4 weeks. "
            "They will start with 28 puppy teeth. These teeth will be replaced "
            "with their 42 permanent adult teeth at about the age of four months. "
            "Dogs have four different types of teeth"};
}

inline relgrade::Passage p75() {
    return {"p75",
            "Humans and most other mammals have a temporary set of teeth, the "
            "deciduous, or milk, teeth; in humans, they usually erupt between the "
            "6th and 24th months. These number 20 in all: 2 central incisors, 2 "
            "lateral incisors, 2 canines, and 4 premolars in each jaw. At about "
            "six years of age, the preliminary teeth begin to be shed as the "
            "permanent set replaces them."};
}

inline relgrade::Query q35() {
    return {"q35", "Do larger lobsters become tougher when cooked?"};
}

inline relgrade::Passage p8163() {
    return {"p8163",
            "I thought the whole bigger lobsters are tougher business was a myth. "
            "Larger lobsters are easier to overcook, making them tougher...but "
            "cooked properly they are no tougher. Also, meat from soft-shell "
            "lobsters is more tender than that from hard-shell lobsters. At least "
            "that's what I've read."};
}

inline relgrade::Passage p4661() {
    return {"p4661",
            "by the time a lobster gets to 3lbs, it is starting to get tough. "
            "long time cooking softens it up. a long time ago, we bought 6-8 lb "
            "lobsters in the waltham market. regular price $0.79 a lb. special, "
            "$0.69 a pound. those babies were tough. cook for about an hour, then "
            "chop them up for salad. Reply. slawecki."};
}

inline relgrade::QueryPassagePair pair_q18_p4068() { return {q18(), p4068()}; }
inline relgrade::QueryPassagePair pair_q18_p75() { return {q18(), p75()}; }
inline relgrade::QueryPassagePair pair_q35_p8163() { return {q35(), p8163()}; }
inline relgrade::QueryPassagePair pair_q35_p4661() { return {q35(), p4661()}; }

}  // namespace fixtures
