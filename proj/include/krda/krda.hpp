#pragma once

#include "krda/benchmark.hpp"
#include "krda/data.hpp"
#include "krda/error.hpp"
#include "krda/matrix.hpp"
#include "krda/mixture.hpp"
#include "krda/model_io.hpp"
#include "krda/nade.hpp"
#include "krda/plot.hpp"
#include "krda/random.hpp"
#include "krda/stats.hpp"
#include "krda/svm.hpp"
#include "krda/trainer.hpp"
#include "krda/transport.hpp"

namespace krda {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace krda
