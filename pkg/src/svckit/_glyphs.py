"""Embedded monospace bitmap glyphs, ASCII 32..126.

Each glyph is 13 rows of 10-bit masks; bit k set means the pixel at
x offset k is inked.  Index 0 of GLYPHS is character code 32.
"""

GLYPH_W = 10
GLYPH_H = 13

GLYPHS = (
    (0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0),  # space
    (0, 0, 16, 16, 16, 16, 16, 16, 0, 16, 0, 0, 0),  # !
    (0, 0, 48, 48, 48, 0, 0, 0, 0, 0, 0, 0, 0),  # "
    (0, 0, 64, 16, 16, 120, 32, 120, 40, 8, 0, 0, 0),  # #
    (0, 0, 16, 84, 20, 28, 48, 80, 84, 56, 16, 0, 0),  # $
    (0, 0, 68, 10, 42, 20, 80, 168, 160, 68, 0, 0, 0),  # %
    (0, 0, 56, 4, 68, 248, 68, 68, 68, 120, 0, 0, 0),  # &
    (0, 0, 16, 16, 16, 0, 0, 0, 0, 0, 0, 0, 0),  # '
    (0, 0, 16, 0, 8, 8, 8, 8, 8, 16, 16, 0, 0),  # (
    (0, 0, 16, 0, 32, 32, 32, 32, 32, 16, 16, 0, 0),  # )
    (0, 0, 0, 0, 0, 16, 16, 16, 40, 0, 0, 0, 0),  # *
    (0, 0, 0, 0, 16, 16, 124, 16, 16, 0, 0, 0, 0),  # +
    (0, 0, 0, 0, 0, 0, 0, 0, 0, 16, 0, 0, 0),  # ,
    (0, 0, 0, 0, 0, 0, 24, 0, 0, 0, 0, 0, 0),  # -
    (0, 0, 0, 0, 0, 0, 0, 0, 0, 16, 0, 0, 0),  # .
    (0, 0, 32, 32, 0, 16, 16, 0, 0, 8, 0, 0, 0),  # /
    (0, 0, 56, 68, 68, 68, 68, 68, 68, 56, 0, 0, 0),  # 0
    (0, 0, 48, 40, 32, 32, 32, 32, 32, 32, 0, 0, 0),  # 1
    (0, 0, 48, 72, 64, 64, 32, 16, 8, 120, 0, 0, 0),  # 2
    (0, 0, 56, 64, 64, 48, 64, 68, 68, 56, 0, 0, 0),  # 3
    (0, 0, 64, 96, 80, 80, 72, 248, 64, 64, 0, 0, 0),  # 4
    (0, 0, 120, 0, 0, 60, 68, 64, 68, 56, 0, 0, 0),  # 5
    (0, 0, 56, 72, 4, 52, 68, 68, 68, 56, 0, 0, 0),  # 6
    (0, 0, 124, 64, 32, 32, 16, 16, 8, 8, 0, 0, 0),  # 7
    (0, 0, 56, 68, 68, 56, 68, 68, 68, 56, 0, 0, 0),  # 8
    (0, 0, 56, 68, 68, 68, 88, 64, 36, 56, 0, 0, 0),  # 9
    (0, 0, 0, 0, 16, 0, 0, 0, 0, 16, 0, 0, 0),  # :
    (0, 0, 0, 0, 16, 0, 0, 0, 16, 0, 0, 0, 0),  # ;
    (0, 0, 0, 0, 0, 96, 24, 8, 32, 0, 0, 0, 0),  # <
    (0, 0, 0, 0, 0, 120, 0, 120, 0, 0, 0, 0, 0),  # =
    (0, 0, 0, 0, 0, 24, 96, 64, 16, 0, 0, 0, 0),  # >
    (0, 0, 48, 72, 64, 64, 32, 32, 0, 32, 0, 0, 0),  # ?
    (0, 0, 112, 140, 372, 330, 330, 298, 210, 4, 56, 0, 0),  # @
    (0, 0, 16, 24, 40, 32, 60, 68, 68, 66, 0, 0, 0),  # A
    (0, 0, 60, 68, 68, 4, 124, 68, 68, 60, 0, 0, 0),  # B
    (0, 0, 56, 68, 66, 2, 2, 66, 68, 56, 0, 0, 0),  # C
    (0, 0, 60, 68, 132, 132, 132, 132, 68, 60, 0, 0, 0),  # D
    (0, 0, 60, 4, 4, 4, 60, 4, 4, 124, 0, 0, 0),  # E
    (0, 0, 60, 4, 4, 4, 60, 4, 4, 4, 0, 0, 0),  # F
    (0, 0, 56, 68, 66, 2, 98, 66, 68, 92, 0, 0, 0),  # G
    (0, 0, 132, 132, 132, 132, 252, 132, 132, 132, 0, 0, 0),  # H
    (0, 0, 16, 16, 16, 16, 16, 16, 16, 16, 0, 0, 0),  # I
    (0, 0, 64, 64, 64, 64, 64, 72, 72, 48, 0, 0, 0),  # J
    (0, 0, 68, 36, 20, 20, 28, 20, 36, 68, 0, 0, 0),  # K
    (0, 0, 4, 4, 4, 4, 4, 4, 4, 124, 0, 0, 0),  # L
    (0, 0, 198, 198, 198, 130, 170, 170, 146, 146, 0, 0, 0),  # M
    (0, 0, 140, 140, 148, 148, 164, 164, 196, 196, 0, 0, 0),  # N
    (0, 0, 56, 68, 130, 130, 130, 130, 68, 56, 0, 0, 0),  # O
    (0, 0, 60, 68, 68, 68, 60, 4, 4, 4, 0, 0, 0),  # P
    (0, 0, 56, 68, 130, 130, 130, 130, 68, 120, 0, 0, 0),  # Q
    (0, 0, 60, 68, 68, 68, 60, 4, 68, 68, 0, 0, 0),  # R
    (0, 0, 112, 136, 8, 48, 192, 128, 136, 112, 0, 0, 0),  # S
    (0, 0, 124, 16, 16, 16, 16, 16, 16, 16, 0, 0, 0),  # T
    (0, 0, 68, 68, 68, 68, 68, 68, 68, 56, 0, 0, 0),  # U
    (0, 0, 66, 68, 68, 36, 40, 40, 24, 16, 0, 0, 0),  # V
    (0, 0, 305, 306, 306, 290, 10, 200, 204, 196, 0, 0, 0),  # W
    (0, 0, 68, 36, 40, 24, 24, 40, 36, 68, 0, 0, 0),  # X
    (0, 0, 68, 68, 40, 56, 16, 16, 16, 16, 0, 0, 0),  # Y
    (0, 0, 124, 64, 32, 16, 16, 8, 4, 124, 0, 0, 0),  # Z
    (0, 24, 8, 8, 8, 8, 8, 8, 8, 8, 24, 0, 0),  # [
    (0, 0, 8, 8, 0, 16, 16, 0, 0, 32, 0, 0, 0),  # \
    (0, 48, 32, 32, 32, 32, 32, 32, 32, 32, 48, 0, 0),  # ]
    (0, 0, 0, 0, 48, 32, 8, 72, 0, 0, 0, 0, 0),  # ^
    (0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 56, 0, 0),  # _
    (0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0),  # `
    (0, 0, 0, 0, 24, 36, 48, 36, 36, 60, 0, 0, 0),  # a
    (0, 0, 4, 4, 60, 68, 68, 68, 68, 60, 0, 0, 0),  # b
    (0, 0, 0, 0, 56, 68, 4, 4, 68, 56, 0, 0, 0),  # c
    (0, 0, 64, 64, 120, 68, 68, 68, 68, 120, 0, 0, 0),  # d
    (0, 0, 0, 0, 56, 68, 124, 4, 68, 56, 0, 0, 0),  # e
    (0, 0, 16, 16, 48, 16, 16, 16, 16, 16, 0, 0, 0),  # f
    (0, 0, 0, 0, 120, 68, 68, 68, 68, 120, 68, 56, 0),  # g
    (0, 0, 4, 4, 60, 68, 68, 68, 68, 68, 0, 0, 0),  # h
    (0, 0, 0, 0, 32, 32, 32, 32, 32, 32, 0, 0, 0),  # i
    (0, 0, 0, 0, 32, 32, 32, 32, 32, 32, 32, 48, 0),  # j
    (0, 0, 4, 4, 36, 20, 12, 28, 20, 36, 0, 0, 0),  # k
    (0, 0, 16, 16, 16, 16, 16, 16, 16, 16, 0, 0, 0),  # l
    (0, 0, 0, 0, 110, 146, 146, 146, 146, 146, 0, 0, 0),  # m
    (0, 0, 0, 0, 60, 68, 68, 68, 68, 68, 0, 0, 0),  # n
    (0, 0, 0, 0, 56, 68, 68, 68, 68, 56, 0, 0, 0),  # o
    (0, 0, 0, 0, 60, 68, 68, 68, 68, 60, 4, 4, 0),  # p
    (0, 0, 0, 0, 120, 68, 68, 68, 68, 120, 64, 64, 0),  # q
    (0, 0, 0, 0, 24, 8, 8, 8, 8, 8, 0, 0, 0),  # r
    (0, 0, 0, 0, 48, 72, 24, 96, 72, 48, 0, 0, 0),  # s
    (0, 0, 0, 16, 56, 16, 16, 16, 16, 48, 0, 0, 0),  # t
    (0, 0, 0, 0, 68, 68, 68, 68, 68, 120, 0, 0, 0),  # u
    (0, 0, 0, 0, 68, 64, 40, 40, 48, 16, 0, 0, 0),  # v
    (0, 0, 0, 0, 306, 50, 180, 164, 204, 72, 0, 0, 0),  # w
    (0, 0, 0, 0, 36, 40, 16, 16, 40, 36, 0, 0, 0),  # x
    (0, 0, 0, 0, 68, 64, 40, 40, 16, 16, 16, 8, 0),  # y
    (0, 0, 0, 0, 60, 32, 16, 8, 8, 60, 0, 0, 0),  # z
    (0, 16, 16, 16, 16, 16, 16, 16, 16, 16, 16, 0, 0),  # {
    (0, 16, 16, 16, 16, 16, 16, 16, 16, 16, 16, 16, 0),  # |
    (0, 16, 16, 16, 16, 16, 16, 16, 16, 16, 16, 0, 0),  # }
    (0, 0, 0, 0, 0, 0, 12, 52, 0, 0, 0, 0, 0),  # ~
)

# hollow box shown for characters outside the glyph set
FALLBACK = (0, 1023, 513, 513, 513, 513, 513, 513, 513, 513, 513, 1023, 0, 0)
