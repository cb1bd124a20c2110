#pragma once

#include "krich/audit.hpp"
#include "krich/constructions.hpp"
#include "krich/enumerate.hpp"
#include "krich/error.hpp"
#include "krich/flat.hpp"
#include "krich/io.hpp"
#include "krich/linalg.hpp"
#include "krich/point.hpp"
#include "krich/rational.hpp"
#include "krich/report.hpp"
#include "krich/rng.hpp"
#include "krich/sphere.hpp"
#include "krich/transforms.hpp"
