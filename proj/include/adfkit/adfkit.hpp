#pragma once

#include "adfkit/error.hpp"
#include "adfkit/rng.hpp"
#include "adfkit/text.hpp"
#include "adfkit/catalog.hpp"
#include "adfkit/preset.hpp"
#include "adfkit/presets_bundled.hpp"
#include "adfkit/manifest.hpp"
#include "adfkit/stub.hpp"
#include "adfkit/audio/clip.hpp"
#include "adfkit/audio/wav.hpp"
#include "adfkit/audio/resample.hpp"
#include "adfkit/audio/segment.hpp"
#include "adfkit/audio/spectrum.hpp"
#include "adfkit/augment/rawboost.hpp"
#include "adfkit/eval/scores.hpp"
#include "adfkit/eval/metrics.hpp"
#include "adfkit/eval/reference_scorer.hpp"
#include "adfkit/report/tables.hpp"
#include "adfkit/report/embeddings.hpp"
