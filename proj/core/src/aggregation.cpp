#include "relgrade/aggregation.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace relgrade {

ThresholdMap::ThresholdMap(std::vector<Band> bands) : bands_(std::move(bands)) {
    std::sort(bands_.begin(), bands_.end(),
              [](const Band& a, const Band& b) { return a.lo < b.lo; });
    int expected_lo = 0;
    int previous_label = -1;
    for (const Band& band : bands_) {
        if (band.lo != expected_lo || band.hi < band.lo)
            throw std::invalid_argument("threshold bands must partition [0,12]");
        if (band.label.value() < previous_label)
            throw std::invalid_argument(
                "threshold labels must weakly increase with the sum");
        previous_label = band.label.value();
        expected_lo = band.hi + 1;
    }
    if (bands_.empty() || expected_lo != 13)
        throw std::invalid_argument("threshold bands must partition [0,12]");
}

ThresholdMap ThresholdMap::standard() {
    return ThresholdMap({{0, 4, RelevanceLabel(0)},
                         {5, 6, RelevanceLabel(1)},
                         {7, 9, RelevanceLabel(2)},
                         {10, 12, RelevanceLabel(3)}});
}

ThresholdMap ThresholdMap::parse(const std::string& spec) {
    std::vector<Band> bands;
    std::istringstream in(spec);
    std::string item;
    while (std::getline(in, item, ',')) {
        int lo, hi, label;
        char dash, colon;
        std::istringstream part(item);
        if (!(part >> lo >> dash >> hi >> colon >> label) || dash != '-' ||
            colon != ':' || !(part >> std::ws).eof())
            throw std::invalid_argument("bad threshold band: '" + item + "'");
        auto valid = validate_label(label);
        if (!valid)
            throw std::invalid_argument("threshold label out of range: " + item);
        bands.push_back({lo, hi, *valid});
    }
    return ThresholdMap(std::move(bands));
}

RelevanceLabel ThresholdMap::label_for_sum(int sum) const {
    for (const Band& band : bands_) {
        if (sum >= band.lo && sum <= band.hi) return band.label;
    }
    throw std::out_of_range("grade sum outside [0,12]: " + std::to_string(sum));
}

std::string ThresholdMap::to_spec() const {
    std::string out;
    for (const Band& band : bands_) {
        if (!out.empty()) out += ',';
        out += std::to_string(band.lo) + "-" + std::to_string(band.hi) + ":" +
               std::to_string(band.label.value());
    }
    return out;
}

RelevanceLabel sum_to_label(const CriterionGrades& grades, const ThresholdMap& map) {
    return map.label_for_sum(grades.sum());
}

GaussianNbModel fit_gaussian_nb(
    const std::vector<GaussianNbModel::FeatureVector>& features,
    const std::vector<RelevanceLabel>& labels, double epsilon) {
    constexpr std::size_t F = GaussianNbModel::kFeatures;
    if (features.empty()) throw std::invalid_argument("empty training set");
    if (features.size() != labels.size())
        throw std::invalid_argument("features and labels must have equal length");
    if (epsilon < 0.0) throw std::invalid_argument("epsilon must be >= 0");

    const std::size_t n = features.size();

    // Smoothing term: epsilon times the largest per-feature population
    // variance over the pooled training data.
    std::array<double, F> pooled_mean{};
    for (const auto& row : features)
        for (std::size_t f = 0; f < F; ++f) pooled_mean[f] += row[f];
    for (std::size_t f = 0; f < F; ++f) pooled_mean[f] /= static_cast<double>(n);
    double max_pooled_variance = 0.0;
    for (std::size_t f = 0; f < F; ++f) {
        double acc = 0.0;
        for (const auto& row : features) {
            const double d = row[f] - pooled_mean[f];
            acc += d * d;
        }
        max_pooled_variance = std::max(max_pooled_variance, acc / static_cast<double>(n));
    }
    const double smoothing = epsilon * max_pooled_variance;

    GaussianNbModel model;
    model.smoothing_epsilon_ = epsilon;
    for (const auto& label : labels) {
        if (std::find(model.classes_.begin(), model.classes_.end(), label.value()) ==
            model.classes_.end())
            model.classes_.push_back(label.value());
    }
    std::sort(model.classes_.begin(), model.classes_.end());

    for (int cls : model.classes_) {
        std::size_t count = 0;
        std::array<double, F> mean{};
        for (std::size_t i = 0; i < n; ++i) {
            if (labels[i].value() != cls) continue;
            ++count;
            for (std::size_t f = 0; f < F; ++f) mean[f] += features[i][f];
        }
        for (std::size_t f = 0; f < F; ++f) mean[f] /= static_cast<double>(count);

        std::array<double, F> variance{};
        for (std::size_t i = 0; i < n; ++i) {
            if (labels[i].value() != cls) continue;
            for (std::size_t f = 0; f < F; ++f) {
                const double d = features[i][f] - mean[f];
                variance[f] += d * d;
            }
        }
        for (std::size_t f = 0; f < F; ++f) {
            variance[f] = variance[f] / static_cast<double>(count) + smoothing;
            if (!(variance[f] > 0.0))
                throw std::domain_error(
                    "degenerate variance: class " + std::to_string(cls) +
                    ", feature " + std::to_string(f));
        }

        model.priors_.push_back(static_cast<double>(count) / static_cast<double>(n));
        model.means_.push_back(mean);
        model.variances_.push_back(variance);
    }
    return model;
}

RelevanceLabel GaussianNbModel::predict(const CriterionGrades& grades) const {
    return predict(FeatureVector{grades.exactness.value(), grades.coverage.value(),
                                 grades.topicality.value(),
                                 grades.contextual_fit.value()});
}

RelevanceLabel GaussianNbModel::predict(const FeatureVector& features) const {
    if (classes_.empty()) throw std::logic_error("model is not fitted");
    int best_class = classes_[0];
    double best_score = -std::numeric_limits<double>::infinity();
    bool have_best = false;
    for (std::size_t c = 0; c < classes_.size(); ++c) {
        double score = std::log(priors_[c]);
        for (std::size_t f = 0; f < kFeatures; ++f) {
            const double var = variances_[c][f];
            const double d = features[f] - means_[c][f];
            score += -0.5 * std::log(2.0 * std::numbers::pi * var) -
                     d * d / (2.0 * var);
        }
        // Classes are ascending, so a tie keeps the smaller label. Exact
        // posterior ties (symmetric training data) can come out a few ulps
        // apart, so equality is taken at 1e-12 relative.
        const double tie_band =
            1e-12 * std::max({1.0, std::abs(score), std::abs(best_score)});
        if (!have_best || score > best_score + tie_band) {
            have_best = true;
            best_score = score;
            best_class = classes_[c];
        }
    }
    return RelevanceLabel(best_class);
}

std::string GaussianNbModel::to_json_string() const {
    nlohmann::json doc;
    doc["classes"] = classes_;
    doc["priors"] = priors_;
    doc["means"] = means_;
    doc["variances"] = variances_;
    doc["smoothing_epsilon"] = smoothing_epsilon_;
    return doc.dump(2) + "\n";
}

GaussianNbModel GaussianNbModel::from_json_string(const std::string& json_text) {
    nlohmann::json doc = nlohmann::json::parse(json_text);
    GaussianNbModel model;
    model.classes_ = doc.at("classes").get<std::vector<int>>();
    model.priors_ = doc.at("priors").get<std::vector<double>>();
    model.means_ =
        doc.at("means").get<std::vector<std::array<double, kFeatures>>>();
    model.variances_ =
        doc.at("variances").get<std::vector<std::array<double, kFeatures>>>();
    model.smoothing_epsilon_ = doc.at("smoothing_epsilon").get<double>();

    const std::size_t k = model.classes_.size();
    if (k == 0 || model.priors_.size() != k || model.means_.size() != k ||
        model.variances_.size() != k)
        throw std::invalid_argument("model document has inconsistent shapes");
    if (!std::is_sorted(model.classes_.begin(), model.classes_.end()) ||
        std::adjacent_find(model.classes_.begin(), model.classes_.end()) !=
            model.classes_.end())
        throw std::invalid_argument("model classes must be ascending and unique");
    for (int cls : model.classes_) {
        if (!validate_label(cls))
            throw std::invalid_argument("model class outside 0-3");
    }
    for (const auto& row : model.variances_) {
        for (double v : row) {
            if (!(v > 0.0))
                throw std::invalid_argument("model variances must be positive");
        }
    }
    return model;
}

void GaussianNbModel::save(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write model: " + path);
    out << to_json_string();
}

GaussianNbModel GaussianNbModel::load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open model: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return from_json_string(buffer.str());
}

}  // namespace relgrade
