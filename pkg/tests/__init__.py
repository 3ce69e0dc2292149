# testsパッケージ初期化ファイル
