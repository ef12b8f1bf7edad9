#pragma once

#include <array>
#include <string>
#include <vector>

#include "relgrade/model.hpp"

namespace relgrade {

/// Maps criterion-grade sums (0-12) onto relevance labels through inclusive
/// bands. Bands must partition [0,12] with labels weakly increasing in the
/// band lower bound.
class ThresholdMap {
public:
    struct Band {
        int lo;
        int hi;
        RelevanceLabel label;
    };

    explicit ThresholdMap(std::vector<Band> bands);

    /// The default mapping: 0-4 -> 0, 5-6 -> 1, 7-9 -> 2, 10-12 -> 3.
    static ThresholdMap standard();

    /// Parses a spec like "0-4:0,5-6:1,7-9:2,10-12:3".
    static ThresholdMap parse(const std::string& spec);

    RelevanceLabel label_for_sum(int sum) const;
    const std::vector<Band>& bands() const { return bands_; }
    std::string to_spec() const;

private:
    std::vector<Band> bands_;  // sorted by lo
};

RelevanceLabel sum_to_label(const CriterionGrades& grades, const ThresholdMap& map);

/// Gaussian Naive Bayes over the four criterion grades. Variances are
/// population (biased) per-class variances plus epsilon times the largest
/// per-feature variance of the whole training set; prediction is the argmax
/// of log prior plus summed Gaussian log densities, ties going to the
/// smaller label (log posteriors within 1e-12 relative count as tied).
class GaussianNbModel {
public:
    static constexpr std::size_t kFeatures = 4;
    using FeatureVector = std::array<int, kFeatures>;

    RelevanceLabel predict(const CriterionGrades& grades) const;
    RelevanceLabel predict(const FeatureVector& features) const;

    const std::vector<int>& classes() const { return classes_; }
    const std::vector<double>& priors() const { return priors_; }
    const std::vector<std::array<double, kFeatures>>& means() const { return means_; }
    const std::vector<std::array<double, kFeatures>>& variances() const {
        return variances_;
    }
    double smoothing_epsilon() const { return smoothing_epsilon_; }

    std::string to_json_string() const;
    static GaussianNbModel from_json_string(const std::string& json_text);
    void save(const std::string& path) const;
    static GaussianNbModel load(const std::string& path);

private:
    friend GaussianNbModel fit_gaussian_nb(
        const std::vector<FeatureVector>& features,
        const std::vector<RelevanceLabel>& labels, double epsilon);

    std::vector<int> classes_;  // ascending, each in 0-3
    std::vector<double> priors_;
    std::vector<std::array<double, kFeatures>> means_;
    std::vector<std::array<double, kFeatures>> variances_;  // smoothed, > 0
    double smoothing_epsilon_ = 0.0;
};

/// Fits the model. Throws std::invalid_argument on an empty or mismatched
/// training set and std::domain_error when a smoothed variance is not
/// strictly positive (possible only with epsilon 0 and a constant feature).
GaussianNbModel fit_gaussian_nb(
    const std::vector<GaussianNbModel::FeatureVector>& features,
    const std::vector<RelevanceLabel>& labels, double epsilon = 1e-9);

}  // namespace relgrade
