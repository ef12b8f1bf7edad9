#include "doctest.h"

#include <stdexcept>

#include "relgrade/model.hpp"
#include "relgrade/prompts.hpp"

using namespace relgrade;

TEST_CASE("validate_label accepts the 0-3 scale and nothing else") {
    CHECK(validate_label(3)->value() == 3);
    CHECK(validate_label(0)->value() == 0);
    CHECK_FALSE(validate_label(4).has_value());
    CHECK_FALSE(validate_label(-1).has_value());
}

TEST_CASE("no construction path yields an out-of-scale grade or label") {
    CHECK_THROWS_AS(Grade(4), std::out_of_range);
    CHECK_THROWS_AS(Grade(-1), std::out_of_range);
    CHECK_THROWS_AS(RelevanceLabel(17), std::out_of_range);
    for (int v = 0; v <= 3; ++v) {
        CHECK(Grade(v).value() == v);
        CHECK(RelevanceLabel(v).value() == v);
    }
}

TEST_CASE("queries and passages reject empty identifiers and blank text") {
    CHECK_THROWS_AS(Query("", "dog age by teeth"), std::invalid_argument);
    CHECK_THROWS_AS(Query("q1", "   \t\n"), std::invalid_argument);
    CHECK_THROWS_AS(Passage("", "text"), std::invalid_argument);
    CHECK_THROWS_AS(Passage("p1", ""), std::invalid_argument);
    CHECK_NOTHROW(Query("q1", "ok"));
}

TEST_CASE("criterion names pair with their descriptions") {
    CHECK(criterion_name(Criterion::Exactness) == "Exactness");
    CHECK(criterion_description(Criterion::Exactness) ==
          "How precisely does the passage answer the query.");
    CHECK(criterion_description(Criterion::Coverage) ==
          "How much of the passage is dedicated to discussing the query and its "
          "related topics.");
    CHECK(criterion_name(Criterion::ContextualFit) == "Contextual Fit");
}

TEST_CASE("rendering then scanning a criterion prompt recovers exactly one name") {
    // Neutral texts that do not mention any criterion by name.
    Query query("q1", "weather in spring");
    Passage passage("p1", "Spring weather varies by region.");
    for (Criterion rendered : all_criteria()) {
        auto prompt = render_criterion_prompt(rendered, query, passage);
        int names_found = 0;
        for (Criterion candidate : all_criteria()) {
            std::string needle =
                "meets the " + std::string(criterion_name(candidate)) + " criterion";
            if (prompt.user_prompt.find(needle) != std::string::npos) ++names_found;
        }
        CHECK(names_found == 1);
    }
}

TEST_CASE("grade sum and accessors") {
    CriterionGrades grades{Grade(2), Grade(2), Grade(3), Grade(3)};
    CHECK(grades.sum() == 10);
    CHECK(grades.get(Criterion::Topicality).value() == 3);
}

TEST_CASE("judged pair exposes full grades only when all four are present") {
    JudgedPair pair;
    pair.grades.emplace(Criterion::Exactness, Grade(3));
    pair.grades.emplace(Criterion::Coverage, Grade(2));
    CHECK_FALSE(pair.full_grades().has_value());
    pair.grades.emplace(Criterion::Topicality, Grade(1));
    pair.grades.emplace(Criterion::ContextualFit, Grade(0));
    auto full = pair.full_grades();
    REQUIRE(full.has_value());
    CHECK(full->sum() == 6);
}

TEST_CASE("qrels set keeps keys unique and sorted") {
    QrelsSet qrels;
    CHECK(qrels.insert("q2", "p1", RelevanceLabel(1)));
    CHECK(qrels.insert("q1", "p9", RelevanceLabel(3)));
    CHECK_FALSE(qrels.insert("q2", "p1", RelevanceLabel(0)));
    CHECK(qrels.size() == 2);
    CHECK(qrels.get("q2", "p1")->value() == 1);  // first insert wins
    CHECK(qrels.entries().begin()->first.first == "q1");
    CHECK_FALSE(qrels.get("q9", "p9").has_value());
}
