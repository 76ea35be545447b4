#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "otf/classifier.hpp"
#include "otf/generator.hpp"

// Residential/commercial classification of daily load shapes, trained on
// batches streamed from a Generator.
namespace otf::ml {

inline constexpr int kHoursPerDay = 24;

struct DailySlice {
    Eigen::Matrix<double, kHoursPerDay, 1> features;  // hourly means
    Label label = Label::Commercial;
};

// Samples in one day at the given resolution; NonDivisibleLength unless a
// day splits into whole hours of whole samples.
std::size_t samples_per_day(std::uint32_t resolution_seconds);

std::vector<DailySlice> slice_batch(const Batch& batch, std::size_t samples_per_day);

// Network inputs as columns: each slice's hourly means divided by its daily
// mean, minus one (load shape independent of scale). Targets are 1 for
// residential, 0 for commercial.
struct SliceMatrix {
    MatrixX<double> features;
    RowVectorX<double> targets;
};
SliceMatrix to_matrix(const std::vector<DailySlice>& slices);

struct TrainConfig {
    std::uint32_t epochs = 100;
    std::uint32_t batches_per_epoch = 4;
    Eigen::Index hidden = 16;
    double learning_rate = 0.05;
    std::uint64_t init_seed = 7;
};

struct TrainResult {
    Classifier classifier;
    // Summed squared error over each epoch's slices, before that epoch's update.
    std::vector<double> epoch_loss;
    std::vector<std::size_t> epoch_slices;
};

// Each epoch draws batches_per_epoch batches through request_data, sums the
// error over every slice, and applies a single gradient step.
TrainResult train(Generator& generator, const TrainConfig& config);
TrainResult train(Generator& generator, Classifier initial, const TrainConfig& config);

// Fraction of slices whose thresholded output (>= 0.5 means residential)
// matches the label, over num_batches fresh batches.
double evaluate(const Classifier& classifier, Generator& generator, std::uint32_t num_batches);

}  // namespace otf::ml
