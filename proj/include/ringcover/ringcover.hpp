#pragma once

#include "ringcover/agl.hpp"
#include "ringcover/bounds.hpp"
#include "ringcover/certificate.hpp"
#include "ringcover/cover.hpp"
#include "ringcover/errors.hpp"
#include "ringcover/field.hpp"
#include "ringcover/formulas.hpp"
#include "ringcover/matrix.hpp"
#include "ringcover/numtheory.hpp"
#include "ringcover/packed.hpp"
#include "ringcover/poly.hpp"
#include "ringcover/report.hpp"
#include "ringcover/ring_spec.hpp"
#include "ringcover/sigma.hpp"
#include "ringcover/singer.hpp"
#include "ringcover/subspace.hpp"
#include "ringcover/table_ring.hpp"
