#pragma once

#include <string>
#include <vector>

#include "d2/extension.hpp"

namespace d2 {

struct GalleryItem {
    std::string name;
    std::string description;
};
const std::vector<GalleryItem>& gallery();
Extension gallery_extension(const std::string& name, uint64_t seed = 1);

// named algebras used by the gallery and the random sampler
Algebra cyclic_group_algebra(const Field& f, int n);
Algebra symmetric_group_algebra3(const Field& f);
Algebra split_algebra(const Field& f, int n);
Algebra upper_triangular2(const Field& f);
Algebra truncated_polynomial(const Field& f, int n);  // K[x]/x^n

// M from a fixed menu (dim <= max_dim), N generated by one or two seeded random elements
Extension random_extension(uint64_t seed, int max_dim = 6);

}  // namespace d2
