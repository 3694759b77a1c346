#pragma once

// Umbrella header.

#include "sbi_forge/cli/commands.hpp"
#include "sbi_forge/core/blend.hpp"
#include "sbi_forge/core/error.hpp"
#include "sbi_forge/core/filters.hpp"
#include "sbi_forge/core/landmarks.hpp"
#include "sbi_forge/core/range.hpp"
#include "sbi_forge/core/raster.hpp"
#include "sbi_forge/core/rng.hpp"
#include "sbi_forge/ingest/crop.hpp"
#include "sbi_forge/ingest/digest.hpp"
#include "sbi_forge/ingest/image_io.hpp"
#include "sbi_forge/ingest/manifest.hpp"
#include "sbi_forge/ingest/writer.hpp"
#include "sbi_forge/mg/deform.hpp"
#include "sbi_forge/mg/hull.hpp"
#include "sbi_forge/mg/mask.hpp"
#include "sbi_forge/mg/smooth.hpp"
#include "sbi_forge/pipeline/audit.hpp"
#include "sbi_forge/pipeline/batch.hpp"
#include "sbi_forge/pipeline/config.hpp"
#include "sbi_forge/pipeline/pipeline.hpp"
#include "sbi_forge/pipeline/recipe.hpp"
#include "sbi_forge/scoring/score_file.hpp"
#include "sbi_forge/scoring/scoring.hpp"
#include "sbi_forge/stg/augment.hpp"
#include "sbi_forge/stg/color.hpp"
#include "sbi_forge/stg/frequency.hpp"
#include "sbi_forge/stg/params.hpp"
#include "sbi_forge/stg/resize_translate.hpp"
