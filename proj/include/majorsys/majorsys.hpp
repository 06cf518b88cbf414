#pragma once

#include "majorsys/corpus.hpp"
#include "majorsys/encoders.hpp"
#include "majorsys/encoding.hpp"
#include "majorsys/error.hpp"
#include "majorsys/index.hpp"
#include "majorsys/langmodel.hpp"
#include "majorsys/ngram.hpp"
#include "majorsys/phonetics.hpp"
#include "majorsys/pipeline.hpp"
#include "majorsys/records.hpp"
#include "majorsys/tags.hpp"
#include "majorsys/verify.hpp"
