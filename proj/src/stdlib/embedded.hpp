#pragma once

#include <cstddef>

namespace bssvm::detail {

struct EmbeddedSource {
    const char* name;
    const char* text;
};

extern const EmbeddedSource kEmbeddedSources[];
extern const std::size_t kEmbeddedSourceCount;

}  // namespace bssvm::detail
