#pragma once

#include "rastershape/descriptor.hpp"
#include "rastershape/error.hpp"
#include "rastershape/evaluation.hpp"
#include "rastershape/matcher.hpp"
#include "rastershape/raster.hpp"
#include "rastershape/shape_io.hpp"
#include "rastershape/synthetic.hpp"
