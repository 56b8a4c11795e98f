#pragma once

#define SWARMSIM_VERSION "0.1.0"
