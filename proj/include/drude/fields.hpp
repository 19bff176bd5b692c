#pragma once

#include <vector>

#include "drude/grid.hpp"

namespace drude {

/// The coupled unknown of one second-order pair: the primary field (E or H;
/// one component in 1D, two in 2D TE) plus the scalar auxiliary field (K or J).
struct FieldBundle {
    std::vector<GridFunction> primary;
    GridFunction aux;

    bool all_finite() const {
        for (const auto& g : primary)
            if (!g.all_finite())
                return false;
        return aux.all_finite();
    }
};

/// Grids of the primary components: 1D primal; 2D TE Ex on (dual,primal),
/// Ey on (primal,dual).
std::vector<Stagger> primary_staggers(int dim);

/// Grid of the auxiliary field: 1D dual; 2D TE (dual,dual).
Stagger aux_stagger(int dim);

} // namespace drude
