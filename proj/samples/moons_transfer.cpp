// Transfers a labelled moons source onto a rotated, unlabelled target and compares the SVM
// trained on the transferred source with the one trained on the raw source.
//
//   moons_transfer [angle_deg] [seed]

#include <iostream>
#include <string>

#include "krda/krda.hpp"

int main(int argc, char** argv) {
    const double angle = argc > 1 ? std::stod(argv[1]) : 40.0;
    const std::uint64_t seed = argc > 2 ? std::stoull(argv[2]) : 7;

    const krda::Dataset source = krda::gen_moons({300, 0.1, 0.0, seed});
    krda::Dataset target = krda::gen_moons({300, 0.1, angle, seed + 1});
    const krda::Dataset test = krda::gen_moons({1000, 0.1, angle, seed + 2});
    target.labels.reset();

    krda::TrainConfig train = krda::benchmark_train_config();
    train.seed = seed;
    const krda::KrdaModel model = krda::fit_joint(source, target, 50, 5, train);
    const krda::TransferReport report = krda::transfer_dataset(model, source);
    const krda::Dataset transferred = krda::transferred_dataset(report, source);

    const double adapted = krda::accuracy(krda::svm_fit(transferred), test);
    const double raw = krda::accuracy(krda::svm_fit(source), test);
    std::cout << "rotation " << angle << " deg\n"
              << "  source-only accuracy: " << raw << '\n'
              << "  KRDA accuracy:        " << adapted << '\n'
              << "  max quantile residual: " << report.max_residual() << '\n';
}
