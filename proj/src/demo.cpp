#include "otf/demo.hpp"

namespace otf::ml {

std::size_t samples_per_day(std::uint32_t resolution_seconds) {
    if (resolution_seconds == 0 || 86400 % resolution_seconds != 0) {
        throw Error(ErrorCode::NonDivisibleLength,
                    "resolution " + std::to_string(resolution_seconds) + " s does not divide a day");
    }
    const std::size_t per_day = 86400 / resolution_seconds;
    if (per_day % kHoursPerDay != 0) {
        throw Error(ErrorCode::NonDivisibleLength,
                    "resolution " + std::to_string(resolution_seconds) + " s does not divide an hour");
    }
    return per_day;
}

std::vector<DailySlice> slice_batch(const Batch& batch, std::size_t samples_per_day) {
    if (samples_per_day == 0 || samples_per_day % kHoursPerDay != 0) {
        throw Error(ErrorCode::NonDivisibleLength, "day length must be a positive multiple of 24 samples");
    }
    const auto per_hour = static_cast<Eigen::Index>(samples_per_day / kHoursPerDay);
    std::vector<DailySlice> slices;
    for (const auto& profile : batch.profiles) {
        const auto length = static_cast<std::size_t>(profile.values.size());
        if (length % samples_per_day != 0) {
            throw Error(ErrorCode::NonDivisibleLength, "profile length " + std::to_string(length) +
                                                           " is not a whole number of " +
                                                           std::to_string(samples_per_day) + "-sample days");
        }
        // Each day becomes a 24 x per_hour block whose row means are the features.
        const auto days = static_cast<Eigen::Index>(length / samples_per_day);
        const Eigen::Map<const MatrixX<double>> hours(profile.values.data(), per_hour, days * kHoursPerDay);
        for (Eigen::Index d = 0; d < days; ++d) {
            DailySlice slice;
            slice.features = hours.middleCols(d * kHoursPerDay, kHoursPerDay).colwise().mean().transpose();
            slice.label = profile.label;
            slices.push_back(slice);
        }
    }
    return slices;
}

SliceMatrix to_matrix(const std::vector<DailySlice>& slices) {
    SliceMatrix m{MatrixX<double>(kHoursPerDay, static_cast<Eigen::Index>(slices.size())),
                  RowVectorX<double>(static_cast<Eigen::Index>(slices.size()))};
    for (std::size_t i = 0; i < slices.size(); ++i) {
        const auto col = static_cast<Eigen::Index>(i);
        const double mean = slices[i].features.mean();
        m.features.col(col) = (slices[i].features.array() / mean - 1.0).matrix();
        m.targets(col) = slices[i].label == Label::Residential ? 1.0 : 0.0;
    }
    return m;
}

TrainResult train(Generator& generator, const TrainConfig& config) {
    return train(generator, Classifier(kHoursPerDay, config.hidden, config.init_seed), config);
}

TrainResult train(Generator& generator, Classifier initial, const TrainConfig& config) {
    const std::size_t per_day = samples_per_day(generator.store().resolution_seconds());
    TrainResult result{std::move(initial), {}, {}};
    auto& net = result.classifier;
    for (std::uint32_t epoch = 0; epoch < config.epochs; ++epoch) {
        auto grad = Classifier::Params::zeros(net.inputs(), net.hidden());
        double sum_error = 0.0;
        std::size_t count = 0;
        for (std::uint32_t t = 0; t < config.batches_per_epoch; ++t) {
            const auto slices = slice_batch(generator.request_data(), per_day);
            const auto m = to_matrix(slices);
            sum_error += net.accumulate_gradient(m.features, m.targets, grad);
            count += slices.size();
        }
        net.step(grad, config.learning_rate);
        result.epoch_loss.push_back(sum_error);
        result.epoch_slices.push_back(count);
    }
    return result;
}

double evaluate(const Classifier& classifier, Generator& generator, std::uint32_t num_batches) {
    const std::size_t per_day = samples_per_day(generator.store().resolution_seconds());
    std::size_t correct = 0;
    std::size_t total = 0;
    for (std::uint32_t t = 0; t < num_batches; ++t) {
        const auto m = to_matrix(slice_batch(generator.request_data(), per_day));
        const RowVectorX<double> y = classifier.predict(m.features);
        for (Eigen::Index i = 0; i < y.size(); ++i) {
            const bool predicted_residential = y(i) >= 0.5;
            correct += predicted_residential == (m.targets(i) == 1.0) ? 1 : 0;
        }
        total += static_cast<std::size_t>(y.size());
    }
    return total == 0 ? 0.0 : static_cast<double>(correct) / static_cast<double>(total);
}

}  // namespace otf::ml
