#include "golden.hpp"

namespace tiledag::golden {

const Grid kCoarseSamehKuck = {
    {  0,   0,   0,   0,   0,   0},
    {  1,   0,   0,   0,   0,   0},
    {  2,   3,   0,   0,   0,   0},
    {  3,   4,   5,   0,   0,   0},
    {  4,   5,   6,   7,   0,   0},
    {  5,   6,   7,   8,   9,   0},
    {  6,   7,   8,   9,  10,  11},
    {  7,   8,   9,  10,  11,  12},
    {  8,   9,  10,  11,  12,  13},
    {  9,  10,  11,  12,  13,  14},
    { 10,  11,  12,  13,  14,  15},
    { 11,  12,  13,  14,  15,  16},
    { 12,  13,  14,  15,  16,  17},
    { 13,  14,  15,  16,  17,  18},
    { 14,  15,  16,  17,  18,  19},
};
const Grid kCoarseFibonacci = {
    {  0,   0,   0,   0,   0,   0},
    {  5,   0,   0,   0,   0,   0},
    {  4,   7,   0,   0,   0,   0},
    {  4,   6,   9,   0,   0,   0},
    {  3,   6,   8,  11,   0,   0},
    {  3,   5,   8,  10,  13,   0},
    {  3,   5,   7,  10,  12,  15},
    {  2,   5,   7,   9,  12,  14},
    {  2,   4,   7,   9,  11,  14},
    {  2,   4,   6,   9,  11,  13},
    {  2,   4,   6,   8,  11,  13},
    {  1,   4,   6,   8,  10,  13},
    {  1,   3,   6,   8,  10,  12},
    {  1,   3,   5,   8,  10,  12},
    {  1,   3,   5,   7,  10,  12},
};
const Grid kCoarseGreedy = {
    {  0,   0,   0,   0,   0,   0},
    {  4,   0,   0,   0,   0,   0},
    {  3,   6,   0,   0,   0,   0},
    {  3,   5,   8,   0,   0,   0},
    {  2,   5,   7,  10,   0,   0},
    {  2,   4,   7,   9,  12,   0},
    {  2,   4,   6,   9,  11,  14},
    {  2,   4,   6,   8,  10,  13},
    {  1,   3,   5,   8,  10,  12},
    {  1,   3,   5,   7,   9,  11},
    {  1,   3,   5,   7,   9,  11},
    {  1,   3,   4,   6,   8,  10},
    {  1,   2,   4,   6,   8,  10},
    {  1,   2,   4,   5,   7,   9},
    {  1,   2,   3,   5,   6,   8},
};
const Grid kTiledFlatTree = {
    {  0,   0,   0,   0,   0,   0},
    {  6,   0,   0,   0,   0,   0},
    {  8,  28,   0,   0,   0,   0},
    { 10,  34,  50,   0,   0,   0},
    { 12,  40,  56,  72,   0,   0},
    { 14,  46,  62,  78,  94,   0},
    { 16,  52,  68,  84, 100, 116},
    { 18,  58,  74,  90, 106, 122},
    { 20,  64,  80,  96, 112, 128},
    { 22,  70,  86, 102, 118, 134},
    { 24,  76,  92, 108, 124, 140},
    { 26,  82,  98, 114, 130, 146},
    { 28,  88, 104, 120, 136, 152},
    { 30,  94, 110, 126, 142, 158},
    { 32, 100, 116, 132, 148, 164},
};
const Grid kTiledFibonacci = {
    {  0,   0,   0,   0,   0,   0},
    { 14,   0,   0,   0,   0,   0},
    { 12,  48,   0,   0,   0,   0},
    { 12,  46,  70,   0,   0,   0},
    { 10,  42,  68,  92,   0,   0},
    { 10,  40,  64,  90, 114,   0},
    { 10,  40,  62,  86, 112, 136},
    {  8,  36,  62,  84, 108, 134},
    {  8,  34,  58,  84, 106, 130},
    {  8,  34,  56,  80, 106, 128},
    {  8,  34,  56,  78, 102, 128},
    {  6,  28,  56,  78, 100, 122},
    {  6,  28,  50,  78, 100, 122},
    {  6,  28,  44,  72, 100, 122},
    {  6,  22,  44,  60,  94, 116},
};
const Grid kTiledGreedy = {
    {  0,   0,   0,   0,   0,   0},
    { 12,   0,   0,   0,   0,   0},
    { 10,  42,   0,   0,   0,   0},
    { 10,  40,  64,   0,   0,   0},
    {  8,  36,  62,  86,   0,   0},
    {  8,  34,  56,  84, 106,   0},
    {  8,  34,  56,  78, 102, 128},
    {  8,  30,  52,  78, 100, 122},
    {  6,  28,  50,  72, 100, 118},
    {  6,  28,  50,  72,  94, 116},
    {  6,  28,  50,  68,  94, 116},
    {  6,  28,  44,  66,  88, 110},
    {  6,  22,  44,  66,  88, 110},
    {  6,  22,  44,  60,  82, 104},
    {  6,  22,  38,  60,  76,  98},
};
const Grid kTiledBinaryTree = {
    {  0,   0,   0,   0,   0,   0},
    {  6,   0,   0,   0,   0,   0},
    {  8,  28,   0,   0,   0,   0},
    {  6,  36,  56,   0,   0,   0},
    { 10,  34,  70,  90,   0,   0},
    {  6,  44,  68, 104, 124,   0},
    {  8,  28,  78, 102, 138, 158},
    {  6,  42,  62, 112, 136, 172},
    { 12,  40,  76,  96, 146, 170},
    {  6,  46,  74, 110, 130, 180},
    {  8,  28,  80, 108, 144, 164},
    {  6,  36,  56, 114, 142, 178},
    { 10,  34,  64,  84, 148, 176},
    {  6,  38,  62,  92, 112, 182},
    {  8,  28,  66,  90, 114, 134},
};
const Grid kTiledPlasmaTree5 = {
    {  0,   0,   0,   0,   0,   0},
    {  6,   0,   0,   0,   0,   0},
    {  8,  28,   0,   0,   0,   0},
    { 10,  34,  50,   0,   0,   0},
    { 12,  40,  56,  72,   0,   0},
    { 14,  46,  62,  78,  94,   0},
    {  6,  54,  74,  90, 106, 122},
    {  8,  28,  82, 102, 118, 134},
    { 10,  34,  50, 110, 130, 146},
    { 12,  40,  56,  72, 138, 158},
    { 16,  52,  68,  84, 100, 166},
    {  6,  56,  80,  96, 112, 128},
    {  8,  28,  84, 108, 124, 140},
    { 10,  34,  50, 112, 136, 152},
    { 12,  40,  56,  72, 140, 164},
};
const Grid kGreedy15x3 = {
    {  0,   0,   0},
    { 12,   0,   0},
    { 10,  42,   0},
    { 10,  40,  64},
    {  8,  36,  62},
    {  8,  34,  56},
    {  8,  34,  56},
    {  8,  30,  52},
    {  6,  28,  50},
    {  6,  28,  50},
    {  6,  28,  50},
    {  6,  28,  44},
    {  6,  22,  44},
    {  6,  22,  44},
    {  6,  22,  38},
};
const Grid kAsap15x3 = {
    {  0,   0,   0},
    { 12,   0,   0},
    { 10,  40,   0},
    { 10,  36,  86},
    {  8,  34,  80},
    {  8,  32,  74},
    {  8,  30,  68},
    {  8,  28,  62},
    {  6,  28,  56},
    {  6,  26,  50},
    {  6,  24,  46},
    {  6,  24,  44},
    {  6,  22,  44},
    {  6,  22,  40},
    {  6,  22,  38},
};

const std::vector<CpPair> kGreedyVsAsap = {
    {16, 16, 310, 310},   {32, 16, 360, 402},   {32, 32, 650, 656},    {64, 16, 374, 588},
    {64, 32, 726, 844},   {64, 64, 1342, 1354}, {128, 16, 396, 966},   {128, 32, 748, 1222},
    {128, 64, 1452, 1748}, {128, 128, 2732, 2756},
};

const std::vector<P40Row> kTheoretical40 = {
    {1, 16, 16, 1, 22},
    {2, 54, 60, 3, 72},
    {3, 74, 98, 5, 94},
    {4, 104, 132, 5, 116},
    {5, 126, 166, 5, 138},
    {6, 148, 198, 10, 160},
    {7, 170, 226, 10, 182},
    {8, 192, 254, 10, 204},
    {9, 214, 282, 10, 226},
    {10, 236, 310, 10, 248},
    {11, 258, 336, 20, 270},
    {12, 280, 358, 20, 292},
    {13, 302, 380, 20, 314},
    {14, 324, 402, 20, 336},
    {15, 346, 424, 20, 358},
    {16, 368, 446, 20, 380},
    {17, 390, 468, 20, 402},
    {18, 412, 490, 20, 424},
    {19, 432, 512, 20, 446},
    {20, 454, 534, 20, 468},
    {21, 476, 554, 20, 490},
    {22, 498, 570, 20, 512},
    {23, 520, 586, 20, 534},
    {24, 542, 602, 20, 556},
    {25, 564, 618, 20, 578},
    {26, 586, 634, 20, 600},
    {27, 608, 650, 20, 622},
    {28, 630, 666, 20, 644},
    {29, 652, 682, 20, 666},
    {30, 668, 698, 20, 688},
    {31, 684, 714, 20, 710},
    {32, 700, 730, 20, 732},
    {33, 716, 746, 20, 754},
    {34, 732, 762, 20, 776},
    {35, 748, 778, 20, 798},
    {36, 764, 794, 20, 820},
    {37, 780, 810, 20, 842},
    {38, 796, 826, 20, 862},
    {39, 812, 842, 20, 878},
    {40, 826, 856, 20, 892},
};

const std::vector<BoundsRow> kCholBounds5 = {
    {1, "125.00", "1.00", "1.00"},
    {2, "64.50", "1.94", "0.97"},
    {3, "45.33", "2.76", "0.92"},
    {4, "37.25", "3.36", "0.84"},
    {5, "35.00", "3.57", "0.71"},
    {6, "35.00", "3.57", "0.60"},
    {7, "35.00", "3.57", "0.51"},
    {8, "35.00", "3.57", "0.45"},
    {9, "35.00", "3.57", "0.40"},
    {10, "35.00", "3.57", "0.36"},
};

const std::vector<LostAreaPair> kLostArea5 = {{1, 0}, {2, 4}, {3, 11}, {4, 24}, {5, 45}};

const std::vector<Qr5Row> kQr5x5 = {
    {1, 500, 500, 500, 500, 500, 500},
    {2, 255, 256, 256, 256, 256, 256},
    {3, 176, 176, 178, 178, 178, 176},
    {4, 138, 138, 140, 140, 140, 140},
    {5, 116, 116, 118, 118, 118, 116},
    {6, 102, 104, 104, 104, 104, 104},
    {7, 92, 94, 94, 94, 94, 94},
    {8, 86, 88, 88, 88, 88, 88},
    {9, 82, 84, 84, 84, 86, 86},
    {10, 80, 80, 82, 82, 86, 86},
    {11, 80, 80, 80, 80, 86, 86},
    {12, 80, 80, 80, 80, 86, 86},
    {13, 80, 80, 80, 80, 86, 86},
    {14, 80, 80, 80, 80, 80, 86},
};

const std::vector<RminRow> kStrassenRmin = {
    {4, 1, 8.96e-01, 1.02e+00},
    {8, 1, 7.15e+00, 8.18e+00},
    {16, 1, 5.72e+01, 6.55e+01},
    {32, 1, 4.57e+02, 5.24e+02},
    {64, 2, 3.20e+03, 4.19e+03},
    {128, 3, 2.24e+04, 3.35e+04},
    {256, 4, 1.57e+05, 2.68e+05},
    {512, 5, 1.09e+06, 2.14e+06},
    {1024, 6, 7.69e+06, 1.71e+07},
};

const std::vector<TasksRow> kStrassenTasks = {
    {4, 0, 64, 2},          {4, 1, 116, 7},         {8, 0, 512, 3},         {8, 1, 688, 9},
    {8, 2, 1052, 52},       {16, 0, 4096, 4},       {16, 1, 4544, 13},      {16, 2, 5776, 66},
    {16, 3, 8324, 361},     {32, 0, 32768, 5},      {32, 1, 32512, 21},     {32, 2, 35648, 94},
    {32, 3, 44272, 459},    {32, 4, 62108, 2524},   {64, 0, 262144, 6},     {64, 1, 244736, 37},
    {64, 2, 242944, 150},   {64, 3, 264896, 655},   {64, 4, 325264, 3210},
};

const std::vector<Tasks128Row> kStrassen128 = {
    {1, 1896448, 2.92e4}, {2, 1774592, 2.56e4}, {3, 1762048, 2.24e4}, {4, 1915712, 1.96e4},
    {5, 2338288, 1.72e4}, {6, 3212252, 1.51e4}, {7, 4859338, 1.33e4},
};

}  // namespace tiledag::golden
