#pragma once

#define TRIPLEX_VERSION "0.1.0"
