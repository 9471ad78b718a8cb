#pragma once

#include <iosfwd>
#include <string>

#include "qh/quantum_algebra.hpp"

namespace qh {

/*
  Ring specification files. JSON with the shape

    {
      "name": "cp2",
      "kind": "ambient" | "lagrangian",
      "dim": 2,
      "variable": "t" | "s",
      "commutative": true,
      "context": {"N_L": 3 | "inf", "C_M": 3, "kappa": "1/2"},
      "basis": [{"id": "h0", "degree": 4}, ...],
      "unit": "h0",
      "products": [{"lhs": "h1", "rhs": "h1", "value": "h2"}, ...],
      "modules": [{"lhs": "<ambient id>", "rhs": "<id>", "value": "..."}],
      "ambient": { ...nested ring... }
    }

  Unlisted products are zero; unit products may be omitted. `value` strings
  use the monomial syntax "id", "id*t^2", terms joined by " + ". Loading
  validates the ring and rejects files whose constants fail any invariant.
*/

std::string ring_to_json(const RingSpec& ring);
RingPtr ring_from_json(const std::string& json_text);
RingPtr load_ring_file(const std::string& path);
void save_ring_file(const RingSpec& ring, const std::string& path);

} // namespace qh
