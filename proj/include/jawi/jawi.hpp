#pragma once

#include "jawi/catalog.hpp"
#include "jawi/composer.hpp"
#include "jawi/corpus.hpp"
#include "jawi/defaults.hpp"
#include "jawi/error.hpp"
#include "jawi/letter.hpp"
#include "jawi/ruleset.hpp"
#include "jawi/shaping.hpp"
#include "jawi/transliterate.hpp"
#include "jawi/utf8.hpp"
