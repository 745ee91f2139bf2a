#pragma once

#include <memory>

#include "specsift/refiner.hpp"

namespace specsift {

std::unique_ptr<Backend> make_http_backend(const BackendConfig& cfg);

}  // namespace specsift
