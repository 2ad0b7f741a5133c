#pragma once

// Reference values computed independently (40-digit arithmetic, brute-force
// partial sums) and frozen here.

namespace certirate::oracle {

// ceil(2 ln 10) + 1
inline constexpr unsigned kCeil2Ln10Plus1 = 6;
// ceil(4 ln 20) + 1
inline constexpr unsigned kCeil4Ln20Plus1 = 13;
// ceil(4 ln 40) + 1
inline constexpr unsigned kCeil4Ln40Plus1 = 16;
// ceil(20 + 2 ln 20) + 1
inline constexpr unsigned kCeil20Plus2Ln20Plus1 = 27;
// ceil(9 + 4 ln 10) + 1
inline constexpr unsigned kCeil9Plus4Ln10Plus1 = 20;
// ceil(4 ln 2) + 1
inline constexpr unsigned kCeil4Ln2Plus1 = 4;
// ceil(2 ln 3) + 1
inline constexpr unsigned kCeil2Ln3Plus1 = 4;

// least k >= 16 with sum_{n=16}^{k} 1/(n+1) > 2 ln 2
inline constexpr unsigned kHarmonicFrom16Past2Ln2 = 65;

inline constexpr double kTwoOverE = 0.7357588823428846431910475403229217348916;
inline constexpr double kTwoExpMinus5 = 0.0134758939981709341932720968462968484977;
inline constexpr double kFourthRootOfTwo = 1.189207115002721066717499970560475915293;
inline constexpr double kSqrtTwo = 1.414213562373095048801688724209698078570;
inline constexpr double kInvE = 0.3678794411714423215955237701614608674458;
inline constexpr double kLn4 = 1.386294361119890618834464242916353136151;
inline constexpr double kTwoLn20 = 5.991464547107981986870447152239527627226;

}  // namespace certirate::oracle
